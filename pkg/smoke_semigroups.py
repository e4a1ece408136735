import sys

sys.path.insert(0, "src")
import numpy as np

from multinorm.semigroups import (
    FiniteSemigroup,
    JModuleElement,
    MeanFunctional,
    abs_normalize,
    cancellativity_report,
    constant_row_embed,
    convolve,
    cyclic,
    dihedral,
    direct_product,
    dual_translate,
    invariance_defect,
    inversion_twist,
    lattice_sup_mean,
    left_zero,
    mean_check,
    module_action,
    multi_invariance_bound,
    point_mean,
    rectangular_band,
    right_shift,
    right_zero,
    row_evaluation,
    symmetric,
    tensor_action_identity_check,
    uniform_mean,
)

# --- generators and cancellativity
Z3 = cyclic(3)
rep = cancellativity_report(Z3)
assert rep["cancellative"] and rep["is_group"] and rep["uniform_constant"] == 1, rep
lz = left_zero(2)
rep = cancellativity_report(lz)
assert not rep["left_cancellative"] and rep["uniform_constant"] == 2, rep
assert rep["right_cancellative"], rep
prod = direct_product(cyclic(2), left_zero(2))
assert cancellativity_report(prod)["uniform_constant"] == 2
D3 = dihedral(3)
assert D3.is_group and D3.size == 6
a, b = D3.index("r1"), D3.index("s0")
assert D3.table[a, b] != D3.table[b, a]  # nonabelian
S3 = symmetric(3)
assert S3.is_group and S3.size == 6
rb = rectangular_band(2, 2)
assert not cancellativity_report(rb)["cancellative"]
rz = right_zero(3)
assert cancellativity_report(rz)["left_cancellative"]
d = Z3.to_dict()
Z3b = FiniteSemigroup.from_dict(d)
assert Z3b.identity == Z3.identity

# bad tables
try:
    FiniteSemigroup("ab", [[0, 1], [0, 0]])
    raise SystemExit("associativity not caught")
except Exception as e:
    assert "associative" in str(e), e

# --- convolution
Z2 = cyclic(2)
f = Z2.vector([1.0, 1.0])
g = Z2.vector([1.0, 0.0])
assert np.allclose(convolve(Z2, f, g).coords, [1.0, 1.0])
for s in range(3):
    for t in range(3):
        c = convolve(Z3, Z3.point_mass(s), Z3.point_mass(t))
        want = np.zeros(3)
        want[Z3.table[s, t]] = 1.0
        assert np.array_equal(c.coords, want)
h = Z3.vector(np.array([0.3, -1.2, 2.0]), p=2)
assert np.array_equal(convolve(Z3, Z3.point_mass(0), h).coords, h.coords)
assert convolve(Z3, Z3.point_mass(0), h).p == h.p
# associativity and the l^1 bound
rng = np.random.default_rng(0)
for S in (Z3, lz, rb):
    for _ in range(20):
        x = S.vector(rng.standard_normal(S.size))
        y = S.vector(rng.standard_normal(S.size))
        z = S.vector(rng.standard_normal(S.size))
        lhs = convolve(S, convolve(S, x, y), z)
        rhs = convolve(S, x, convolve(S, y, z))
        assert np.allclose(lhs.coords, rhs.coords, atol=1e-12)
        assert convolve(S, x, y).norm <= x.norm * y.norm + 1e-12

# module bound constant: |f*g|_p <= C^(1/p') |f|_1 |g|_p
for S in (Z3, lz, prod):
    C = cancellativity_report(S)["uniform_constant"]
    for p in (1.0, 2.0, 3.0):
        worst = 0.0
        for _ in range(50):
            x = S.vector(rng.standard_normal(S.size))
            y = S.vector(rng.standard_normal(S.size), p=p)
            lhs = convolve(S, x, y).norm
            worst = max(worst, lhs / (x.norm * y.norm))
        bound = C ** (1.0 - 1.0 / p)
        assert worst <= bound + 1e-9, (S, p, worst, bound)

# --- means
u = uniform_mean(Z3)
assert mean_check(u)["is_mean"]
assert mean_check(point_mean(Z3, 1))["is_mean"]
bad = MeanFunctional(Z2, np.array([2.0, -1.0]))
mc = mean_check(bad)
assert not mc["is_mean"] and mc["norm"] == 3.0 and mc["unit_pairing"] == 1.0

# dual_translate
for s in range(3):
    assert np.allclose(dual_translate(s, u).coords, u.coords)
de = point_mean(Z3, 0)
assert np.array_equal(dual_translate(2, de).coords, point_mean(Z3, 2).coords)
# pairing with one is preserved always; norm drops without left cancellativity
lam = MeanFunctional(lz, np.array([0.7, -0.4]))
tl = dual_translate(0, lam)
assert abs(tl.unit_pairing - lam.unit_pairing) < 1e-15
assert tl.norm < lam.norm  # 0.3 vs 1.1
# left-cancellative: isometry
for s in range(3):
    lamr = MeanFunctional(Z3, rng.standard_normal(3))
    assert abs(dual_translate(s, lamr).norm - lamr.norm) < 1e-15
# identification with the dual of composition by left translation:
# <h, s.lam> = <h o L_s, lam> for every h, checked by direct pairing
for S in (Z2, Z3, lz):
    for k in range(10):
        g2 = np.random.default_rng(6000 + k)
        lamr = MeanFunctional(S, g2.standard_normal(S.size))
        h = g2.standard_normal(S.size)
        for s in range(S.size):
            lhs = float(dual_translate(s, lamr).coords @ h)
            rhs = float(lamr.coords @ h[S.table[s]])
            assert abs(lhs - rhs) < 1e-12

# invariance defect
assert invariance_defect(uniform_mean(cyclic(5))) == 0.0
assert invariance_defect(point_mean(Z2, 0)) == 2.0
mid = MeanFunctional(Z2, (point_mean(Z2, 0).coords + uniform_mean(Z2).coords) / 2)
assert abs(invariance_defect(mid) - 1.0) < 1e-15

# multi-invariance bound
for N in (2, 3, 5, 12):
    G = cyclic(N)
    for pq in ((1, 1), (2, 2)):
        r = multi_invariance_bound(pq[0], pq[1], uniform_mean(G))
        assert abs(r.value - 1.0) <= 1e-9, (N, pq, r.value)
    r = multi_invariance_bound(1, 1, point_mean(G, 0))
    assert r.certified and r.value == float(N), (N, r)
r = multi_invariance_bound(1, 2, mid)
assert r.value >= 1.0 - 1e-12

# abs_normalize
an = abs_normalize(MeanFunctional(Z2, np.array([2.0, -1.0])))
assert np.allclose(an.coords, [2 / 3, 1 / 3])
an = abs_normalize(MeanFunctional(Z2, np.array([1j, 0.0])))
assert np.allclose(an.coords, [1.0, 0.0]) and not np.iscomplexobj(an.coords)

# lattice_sup_mean
for N in (2, 3, 7):
    G = cyclic(N)
    out = lattice_sup_mean(point_mean(G, 0))
    assert np.allclose(out.coords, np.full(N, 1.0 / N))
    assert invariance_defect(out) < 1e-12
    assert mean_check(out)["is_mean"]
out = lattice_sup_mean(uniform_mean(Z3))
assert np.allclose(out.coords, uniform_mean(Z3).coords)
out = lattice_sup_mean(MeanFunctional(Z3, np.array([0.5, 0.5, 0.0])))
assert np.allclose(out.coords, np.full(3, 1.0 / 3))
out = lattice_sup_mean(point_mean(D3, 0))
assert invariance_defect(out) < 1e-12

# --- inversion twist
th = inversion_twist(Z3, Z3.point_mass(1))
assert np.array_equal(th.coords, Z3.point_mass(2).coords)
x = Z3.vector(rng.standard_normal(3))
assert np.array_equal(inversion_twist(Z3, inversion_twist(Z3, x)).coords, x.coords)
y = Z3.vector(rng.standard_normal(3))
lhs = inversion_twist(Z3, convolve(Z3, x, y))
rhs = convolve(Z3, inversion_twist(Z3, y), inversion_twist(Z3, x))
assert np.allclose(lhs.coords, rhs.coords, atol=1e-13)
assert abs(inversion_twist(Z3, x).norm - x.norm) < 1e-15

# --- module actions
U = JModuleElement(Z3, 2, rng.standard_normal((3, 3)))
assert np.allclose(module_action(Z3.point_mass(0), U).matrix, U.matrix)
worst = 0.0
for S in (Z3, cyclic(2), symmetric(3)):
    for k in range(50):
        g2 = np.random.default_rng(1000 + k)
        f1 = S.vector(g2.standard_normal(S.size))
        f2 = S.vector(g2.standard_normal(S.size))
        UU = JModuleElement(S, 2, g2.standard_normal((S.size, S.size)))
        lhs = module_action(f1, module_action(f2, UU)).matrix
        rhs = module_action(convolve(S, f1, f2), UU).matrix
        worst = max(worst, float(np.abs(lhs - rhs).max()))
assert worst < 1e-12, worst
print("module action associativity worst:", worst)

# norm bound with the fiber constant: row scatter costs C^(1/p'), the
# x-fiber multiplicity another C, so |f*U| <= C^(2-1/p) |f|_1 |U|
for S in (Z3, lz, prod):
    C = cancellativity_report(S)["uniform_constant"]
    for p in (1.0, 2.0):
        worst = 0.0
        for k in range(30):
            g2 = np.random.default_rng(2000 + k)
            f1 = S.vector(g2.standard_normal(S.size))
            UU = JModuleElement(S, p, g2.standard_normal((S.size, S.size)))
            got = module_action(f1, UU).norm
            cap = C ** (2.0 - 1.0 / p) * f1.norm * UU.norm
            assert got <= cap + 1e-9, (S, p, got, cap)
# sharpness at left zero: all-ones U turns the bound into equality
for p in (1.0, 2.0):
    UU = JModuleElement(lz, p, np.ones((2, 2)))
    got = module_action(lz.point_mass(0), UU).norm
    assert abs(got - 2.0 ** (2.0 - 1.0 / p) * UU.norm) < 1e-12, (p, got)
# Z_2, f = (1,1), U = identity: four-term enumeration gives 2I
out = module_action(Z2.vector([1.0, 1.0]), JModuleElement(Z2, 2, np.eye(2)))
assert np.array_equal(out.matrix, 2.0 * np.eye(2)), out.matrix

# constant row embed: morphism and row evaluation
worst = 0.0
for k in range(50):
    g2 = np.random.default_rng(3000 + k)
    f1 = Z3.vector(g2.standard_normal(3))
    gg = Z3.vector(g2.standard_normal(3), p=2)
    lhs = module_action(f1, constant_row_embed(Z3, gg)).matrix
    rhs = constant_row_embed(Z3, convolve(Z3, f1, gg)).matrix
    worst = max(worst, float(np.abs(lhs - rhs).max()))
assert worst < 1e-12, worst
print("embed morphism worst:", worst)
gg = Z3.vector(np.array([0.2, -1.0, 0.4]), p=2)
back = row_evaluation(constant_row_embed(Z3, gg), Z3.point_mass(0))
assert np.allclose(back.coords, gg.coords)
dt = Z3.point_mass(1, p=2)
emb = constant_row_embed(Z3, dt)
assert np.array_equal(emb.matrix, np.tile(dt.coords, (3, 1)))

# tensor action identity
for S in (cyclic(2), Z3, symmetric(3)):
    einv = S.identity
    lamv = S.vector(np.arange(1.0, S.size + 1.0), p="inf")
    xv = S.vector(np.ones(S.size), p=2)
    repc = tensor_action_identity_check(S, lamv, xv, einv)
    assert repc["max_err"] == 0.0
    worst = 0.0
    for k in range(50):
        g2 = np.random.default_rng(4000 + k)
        lamv = S.vector(g2.standard_normal(S.size), p="inf")
        xv = S.vector(g2.standard_normal(S.size), p=2)
        s = int(g2.integers(S.size))
        worst = max(worst, tensor_action_identity_check(S, lamv, xv, s)["max_err"])
    assert worst < 1e-12, (S, worst)
Z2b = cyclic(2)
repc = tensor_action_identity_check(
    Z2b, Z2b.point_mass(0, p="inf"), Z2b.point_mass(1, p=1), 1
)
assert repc["max_err"] == 0.0

# right shift
for s in range(3):
    for t in range(3):
        st = Z3.table[s, t]
        assert np.array_equal(
            right_shift(Z3, t, Z3.point_mass(st)).coords, Z3.point_mass(s).coords
        )
xx = Z3.vector(rng.standard_normal(3))
assert np.array_equal(right_shift(Z3, 0, xx).coords, xx.coords)
worst = 0.0
for k in range(50):
    g2 = np.random.default_rng(5000 + k)
    ff = Z3.vector(g2.standard_normal(3))
    s = int(g2.integers(3))
    t = int(g2.integers(3))
    st = int(Z3.table[s, t])
    lhs = right_shift(Z3, t, convolve(Z3, ff, Z3.point_mass(st)))
    rhs = convolve(Z3, ff, right_shift(Z3, t, Z3.point_mass(st)))
    worst = max(worst, float(np.abs(lhs.coords - rhs.coords).max()))
assert worst < 1e-12, worst
print("right shift intertwining worst:", worst)

print("semigroups smoke ok")
