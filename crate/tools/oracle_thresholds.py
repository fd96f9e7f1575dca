"""Crossing points of the COMP rates with the uniform-prior SD rate, and the
large-amplitude values, from the mpmath reference in oracle_values.py.

The SD optimum sits at uniform priors on the range of interest (checked by
the grid search in oracle_values.py).
"""
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
from oracle_values import comp_homodyne, comp_lower, comp_onoff, mp, sd_objective  # noqa: E402

mp.mp.dps = 20


def c_sd(a):
    return sd_objective(0.5, 0.5, a)


for name, rate in [("collective", lambda a: comp_lower(a)[0]), ("onoff", comp_onoff), ("homodyne", comp_homodyne)]:
    crossing = mp.findroot(lambda a: rate(a) - c_sd(a), (0.1, 1.0), solver="anderson")
    print(f"threshold {name} = {mp.nstr(crossing, 8)}")

for a in (6, 50):
    sd, lower = c_sd(a), comp_lower(a)[0]
    print(f"alpha2={a}: c_sd={mp.nstr(sd, 12)} comp_lower={mp.nstr(lower, 12)} gain={mp.nstr(100 * (lower - sd) / sd, 10)}%")
