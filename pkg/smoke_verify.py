import sys
import time

sys.path.insert(0, "src")
import numpy as np

from multinorm.spaces import FiniteMeasureSpace, InputError, LpVector
from multinorm.verify import (
    disjoint_rank_bound_check,
    identity_suite,
    projection_inequality_check,
    rademacher_check,
    reports_to_csv,
    reports_to_json,
)

# --- rademacher
sp = FiniteMeasureSpace("abc", np.array([1.0, 0.5, 2.0]))
one = [[LpVector(sp, 2, np.array([0.3, -1.0, 0.7]))]]
r = rademacher_check(one, 2)
assert r.passed and abs(r.slack) < 1e-12, r
rng = np.random.default_rng(7)
diag = [
    [
        LpVector(sp, 2, rng.standard_normal(3) if i == j else np.zeros(3))
        for j in range(3)
    ]
    for i in range(3)
]
r = rademacher_check(diag, 2)
assert r.passed and abs(r.slack) <= 1e-12 * max(1.0, r.rhs), r
fails = 0
for k in range(200):
    g = np.random.default_rng(100 + k)
    n = int(g.integers(1, 7))
    m = int(g.integers(1, 7))
    w = g.uniform(0.5, 2.0, m)
    spk = FiniteMeasureSpace(tuple(f"a{i}" for i in range(m)), w)
    p = float(g.choice([1.0, 1.5, 2.0, 3.0]))
    F = [
        [LpVector(spk, p, g.standard_normal(m)) for _ in range(n)]
        for _ in range(n)
    ]
    rep = rademacher_check(F, p, seed=100 + k)
    fails += not rep.passed
assert fails == 0, fails
try:
    rademacher_check(one, "inf")
    raise SystemExit("inf not rejected")
except InputError:
    pass

# --- projection
m = 4
g = np.random.default_rng(3)
R = np.zeros((m, m, m))
for s in range(m):
    R[s, 1, s] = 1.0  # evaluation at row 1
U = g.standard_normal((m, m))
rep = projection_inequality_check(R, U, [[0, 1], [2, 3]], [[0, 2], [1, 3]], p=2)
assert rep.passed, rep
rep = projection_inequality_check(R, U, [list(range(m))], [list(range(m))], p=2)
assert rep.passed and abs(rep.slack) < 1e-12, rep
fails = 0
for k in range(200):
    g = np.random.default_rng(300 + k)
    parts = int(g.integers(1, 5))
    labels_x = g.integers(0, parts, m)
    labels_y = g.integers(0, parts, m)
    labels_x[:parts] = np.arange(parts)  # keep every piece nonempty-indexable
    labels_y[:parts] = np.arange(parts)
    X = [np.flatnonzero(labels_x == i) for i in range(parts)]
    Y = [np.flatnonzero(labels_y == i) for i in range(parts)]
    rep = projection_inequality_check(
        g.standard_normal((m, m, m)), g.standard_normal((m, m)), X, Y,
        p=float(g.choice([1.0, 1.5, 2.0])), seed=300 + k,
    )
    fails += not rep.passed
assert fails == 0, fails
try:
    projection_inequality_check(R, U, [[0, 1], [2]], [[0], [1, 2, 3]], p=2)
    raise SystemExit("bad partition not rejected")
except InputError:
    pass

# --- disjoint rank bound
rep = disjoint_rank_bound_check(np.eye(2), 2, [np.array([1.0, 0.0])], [np.array([1.0, 0.0])])
assert rep.passed and abs(rep.lhs - 1.0) < 1e-12 and abs(rep.rhs - 1.0) < 1e-12
rep = disjoint_rank_bound_check(
    np.eye(3), 2,
    [np.eye(3)[0], np.eye(3)[1], np.eye(3)[2]],
    [np.eye(3)[0], np.eye(3)[1], np.eye(3)[2]],
)
assert rep.passed and abs(rep.slack) < 1e-12, rep
fails = 0
for k in range(200):
    g = np.random.default_rng(500 + k)
    mm = int(g.integers(2, 7))
    terms = int(g.integers(1, min(mm, 3) + 1))
    perm = g.permutation(mm)
    cuts = sorted(g.choice(np.arange(1, mm), size=terms - 1, replace=False)) if terms > 1 else []
    blocks = np.split(perm, cuts)
    fs, xs = [], []
    for b in blocks:
        f = np.zeros(mm)
        x = np.zeros(mm)
        f[b] = g.standard_normal(len(b))
        x[b[g.integers(len(b))]] = g.standard_normal()
        fs.append(f)
        xs.append(x)
    rep = disjoint_rank_bound_check(
        g.standard_normal((mm, mm)), float(g.choice([1.0, 2.0, 3.0])), fs, xs, seed=500 + k
    )
    fails += not rep.passed
assert fails == 0, fails
try:
    disjoint_rank_bound_check(np.eye(2), 2, [np.ones(2), np.ones(2)], [np.eye(2)[0], np.eye(2)[1]])
    raise SystemExit("overlap not rejected")
except InputError:
    pass

# --- identity suite
t0 = time.time()
reports = identity_suite()
dt = time.time() - t0
bad = [r for r in reports if not r.passed]
for r in bad:
    print("FAIL", r.name, r.lhs, r.rhs, r.config)
print(f"identity suite: {len(reports)} reports, {len(bad)} failures, {dt:.1f}s")
assert identity_suite({"trials": 0}) == []
again = identity_suite()
assert reports_to_json(again) == reports_to_json(reports)
csv_text = reports_to_csv(reports)
assert csv_text.count("\n") == len(reports) + 1
assert not bad
print("verify smoke ok")
