"""The binomial sums behind ch2(Sym^k E) and their closed forms."""
from flagstab import appendix_f, appendix_g, ch2_sym_from_sums, ch_sym_roots

print(" k  n   f brute/closed    g brute/closed")
for k, n in [(2, 3), (3, 3), (5, 4), (10, 6)]:
    f, g = appendix_f(k, n), appendix_g(k, n)
    print(f"{k:2} {n:2}   {f.brute:>6}/{f.closed:<8} {g.brute:>6}/{g.closed}")

# the sums rebuild the degree-two part of ch Sym^k
for k in range(1, 5):
    print(f"ch2 Sym^{k}, rank 3:", ch2_sym_from_sums(k, 3), "| enumeration:", ch_sym_roots(k, 3).part(2))
