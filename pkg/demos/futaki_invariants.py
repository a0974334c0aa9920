"""Donaldson-Futaki invariants of the degeneration of E to F + G.

A curve example first, then the twisted polarisation on a surface.
"""
from dataclasses import replace

from flagstab import BaseModel, CurveModel, TestConfig, futaki_curve, futaki_twisted

# genus 2, E of rank 3 and degree 6, line subbundle F of degree 3
curve = CurveModel(genus=2, rank=3, degE=6, rankF=1, degF=3)
cfg = TestConfig.from_flag((2,), (1,))  # the Grassmannian of 2-quotients, Plucker line bundle
rep = futaki_curve(curve, cfg)
print("lambda", cfg.lam, "a =", [str(x) for x in rep.a], "b =", [str(x) for x in rep.b])
print("F =", rep.futaki, "C =", rep.closed_form, "->", rep.verdict)

# moving degF through the slope of E flips the sign
for degF in (1, 2, 3, 4):
    r = futaki_curve(replace(curve, degF=degF), cfg)
    print(f"  degF={degF}: F = {r.futaki}")

# surface base, polarisation twisted by a large multiple of the pullback of L
surface = BaseModel(dim=2, degX=1, degKX=-9, rank=3, degE=6, rankF=1, degF=3)
for flag in [(2,), (2, 1)]:
    tw = futaki_twisted(surface, TestConfig.from_flag(flag))
    print(f"flag {flag}: F0 = {tw.F0}, F1 = {tw.F1}, D = {tw.closed_form}, {tw.verdict}")
