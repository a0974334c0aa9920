"""Check the G1/G2 formulas against direct computation over a grid of partitions.

Length at most three is the proven range; longer partitions are reported as findings.
"""
from collections import Counter

from flagstab import conjecture_check, resolve_a2_variant
from flagstab.partitions import enumerate_partitions

print("A2 variant selected by ch Sym^2:", resolve_a2_variant())

tally = Counter()
for e in range(2, 7):
    for lam in enumerate_partitions(3, 5):
        if lam and len(lam) <= e:
            tally[conjecture_check(lam, e).passed] += 1
print(f"length <= 3: {tally[True]} pass, {tally[False]} fail")

# a few longer shapes, outside the proven range
for lam, e in [((1, 1, 1, 1), 6), ((2, 1, 1, 1), 5), ((2, 2, 1, 1, 1), 6)]:
    rec = conjecture_check(lam, e)
    print(lam, "rank", e, "->", "pass" if rec.passed else f"residual {rec.to_json()['residual']}")
