"""Principal elements and their spectra.

For P(2,1,1) the principal element of a hand-picked functional is diagonal;
random Frobenius functionals give the same spectrum.  The hexagon poset is
Frobenius in types B, C and D, and its spectra there are simply reported.
"""

from lieposet import build_algebra, build_type_a, complete_poset, hexagon_bcd, spectrum_report
from lieposet.algebra import functional_from_entries


def show(spec):
    return ", ".join(f"{lam}^{mult}" for lam, mult in spec.items())


alg = build_type_a(complete_poset([2, 1, 1]))
f = functional_from_entries(alg, {(1, 3): 1, (1, 4): 1, (2, 4): 1})
rep = spectrum_report(alg, functional=f)
print("P(2,1,1), F = E*13 + E*14 + E*24")
print("  principal element (diagonal):", [str(rep.principal_matrix.get((i, i), 0)) for i in range(4)])
print("  spectrum:", show(rep.spectrum))
for seed in (1, 2, 3):
    print(f"  random functional, seed {seed}:", show(spectrum_report(alg, seed=seed).spectrum))

hexagon = hexagon_bcd()
for variant in "BCD":
    rep = spectrum_report(build_algebra(hexagon, variant), seed=0)
    print(f"hexagon in type {variant}:", show(rep.spectrum))
