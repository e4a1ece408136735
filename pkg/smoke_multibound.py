import sys

sys.path.insert(0, "src")
import numpy as np

from multinorm.spaces import (
    FiniteMeasureSpace,
    LinearMap,
    LpVector,
    OptimizerBudget,
    operator_norm,
)
from multinorm.norms import (
    max_spec,
    min_spec,
    multi_norm,
    pq_spec,
)
from multinorm.multibound import (
    column_multi_bound,
    mb_operator_norm,
    multi_bound_set,
)
from multinorm.summing import summing_norm_estimate

rng = np.random.default_rng(7)
s2 = FiniteMeasureSpace.unit(2)
s3 = FiniteMeasureSpace("abc", np.array([0.5, 1.0, 2.0]))

# --- multi_bound_set basics
v = LpVector(s2, 1, np.array([2.0, 3.0]))
r = multi_bound_set(max_spec(), [v, v, v])
assert r.collapse_length == 1 and abs(r.value - 5.0) < 1e-12, r
b = [
    LpVector(s2, 1, np.array([1.0, 0.0])),
    LpVector(s2, 1, np.array([0.0, 2.0])),
]
r = multi_bound_set(max_spec(), b)
assert r.certified and abs(r.value - 3.0) < 1e-12, r
r = multi_bound_set(min_spec(), [v] + b)
assert abs(r.value - 5.0) < 1e-12, r

# collapse: every longer tuple drawn from B stays below the distinct value
from itertools import product

from multinorm.spaces import VectorTuple

B = [LpVector(s3, 2, rng.standard_normal(3)) for _ in range(3)]
base = multi_bound_set(pq_spec(1, 2), B)
worst = 0.0
for k in range(1, 7):
    for pick in product(range(3), repeat=k):
        t = VectorTuple([B[i] for i in pick])
        val = multi_norm(pq_spec(1, 2), t).value
        worst = max(worst, val - base.value)
print("collapse excess over distinct tuple:", worst)
assert worst <= 1e-9, worst

# --- duality: pi(q,p, T') vs alpha(p,q, T) on seeded operators
print("--- duality")
worst_ratio, viol = 1.0, 0.0
for k in range(10):
    g = np.random.default_rng(k)
    m = int(g.integers(2, 5))
    pq = [(1, 1), (1, 2), (2, 2)][k % 3]
    pcod = [1, 2, 3][(k // 3) % 3]
    sp = FiniteMeasureSpace([str(t) for t in range(m)], g.uniform(0.5, 2.0, m))
    M = g.standard_normal((m, m))
    T = LinearMap(sp, 1, sp, pcod, M)
    al = column_multi_bound(pq[0], pq[1], T)
    pi = summing_norm_estimate(pq[1], pq[0], T.adjoint(), tuple_cap=m)
    viol = max(viol, pi.value - al.value)
    worst_ratio = min(worst_ratio, pi.value / al.value)
    print(f"  k={k} (p,q)={pq} pcod={pcod} m={m}  alpha={al.value:.6f} pi={pi.value:.6f}")
print("worst pi-alpha violation:", viol, " min ratio:", worst_ratio)
assert viol <= 1e-9, viol
assert worst_ratio >= 0.95, worst_ratio

# --- mb_operator_norm
ident = LinearMap(s2, 1, s2, 1, np.eye(2))
r = mb_operator_norm(min_spec(), min_spec(), ident, 3)
print("mb identity (min,min):", r.value)
assert abs(r.value - 1.0) < 5e-3, r

g = np.random.default_rng(3)
M = g.standard_normal((3, 3))
T = LinearMap(s3, 2, s3, 2, M)
on = operator_norm(T)
r = mb_operator_norm(min_spec(), min_spec(), T, 3)
print("mb (min,min) vs operator norm:", r.value, on.value)
assert r.value <= on.value * (1 + 1e-9)
assert r.value >= on.value * (1 - 5e-3), (r.value, on.value)

z = LinearMap(s2, 1, s2, 2, np.zeros((2, 2)))
assert mb_operator_norm(min_spec(), min_spec(), z, 2).certified

# min-spec domain on l^1 + pq codomain matches the column multi-bound
g = np.random.default_rng(11)
M = g.standard_normal((3, 3))
T = LinearMap(s3, 1, s3, 2, M)
al = column_multi_bound(2, 2, T)
r = mb_operator_norm(min_spec(), pq_spec(2, 2), T, 3)
print("mb vs alpha:", r.value, al.value)
assert r.value <= al.value * (1 + 5e-3), (r.value, al.value)
assert r.value >= al.value * (1 - 5e-3), (r.value, al.value)

# monotone in k_max
vals = [
    mb_operator_norm(min_spec(), pq_spec(1, 2), T, k, OptimizerBudget(seed=5)).value
    for k in (1, 2, 3)
]
print("mb by k_max:", vals)
assert vals[0] <= vals[1] + 1e-9 and vals[1] <= vals[2] + 1e-9, vals

print("multibound smoke ok")
