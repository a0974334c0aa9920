"""Chern characters of Schur powers, computed two ways.

Run with:  python demos/schur_chern_characters.py
"""
from flagstab import Partition, ch_schur_giambelli, ch_schur_roots, ch_sym_roots, extract_G, schur_rank

# Sym^2 of a rank-3 bundle: six exponentials exp(x_i + x_j), rewritten in c1, c2
print("ch Sym^2 E, rank 3:", ch_sym_roots(2, 3))

# a Schur power through the Giambelli determinant of ch Sym^k entries
lam = Partition((2, 1))
det_route = ch_schur_giambelli(lam, 3, 3)
root_route = ch_schur_roots(lam, 3, 3)
print(f"ch E^{lam}, rank 3:", det_route)
print("agrees with the tableau enumeration:", det_route.poly == root_route.poly)
print(f"rank: {det_route.rank} (hook-content count {schur_rank(lam, 3)})")

# normalized classes G1, G2 of the Schur power
for lam in [(1,), (2,), (1, 1), (2, 1)]:
    g1, g2 = extract_G(lam, 3)
    print(f"{str(Partition(lam)):8} G1 = {str(g1):<10} G2 = {g2}")
