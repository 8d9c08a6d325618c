"""Which polynomial phases give an Airy-type integral?

The checker looks for a direction tau along which the odd criterion holds,
falls back to the even criterion, then to the negated phase.  Anything it
cannot certify is reported as inconclusive rather than rejected.
"""

from lie_airy import classify, parse_poly

CASES = [
    "y^3/3",
    "-y^3/3",
    "y^4/4",
    "y1^3 + y2^3",
    "y1^3 - 3*y1*y2^2",
    "y1^4 + y2^4 + y1*y2",
    "y1^2*y2^2",
]

for text in CASES:
    rep = classify(parse_poly(text))
    witness = "" if rep.witness is None else "  tau=" + ", ".join(f"{w:+.3f}" for w in rep.witness)
    print(f"{text:24s} {rep.verdict.value:16s}{witness}")
    if rep.notes:
        print(f"{'':24s} note: {rep.notes}")
