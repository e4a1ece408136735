import numpy as np

from multinorm.spaces import FiniteMeasureSpace, VectorTuple, OptimizerBudget
from multinorm.norms import (
    MultiNormSpec, parse_spec, multi_norm, standard_q_norm, dual_level_norm,
    extension_norm, axiom_report, min_spec, max_spec, lattice_spec,
    standard_spec, pq_spec, extension_spec, dual_spec, multi_norm_upper,
)
import multinorm._backend as backend

print("backend:", backend.current_backend())

s2 = FiniteMeasureSpace.unit(2)
B = OptimizerBudget()

# parsing round trips
for txt in ["min", "max", "lattice", "std:2", "std:3/2", "pq:1,1", "pq:2,2",
            "ext:2,1,4", "dual(min)", "dual(pq:2,2)", "dual(dual(min))"]:
    sp = parse_spec(txt)
    assert str(sp) == txt, (txt, str(sp))
print("parse round trip ok")

t_diag = VectorTuple.from_array(s2, 2, [[3.0, 0.0], [0.0, 4.0]])
print("min:", multi_norm(min_spec(), t_diag).value, "(want 4)")
print("lattice:", multi_norm(lattice_spec(), t_diag).value, "(want 5)")

t_l1 = VectorTuple.from_array(s2, 1, [[1.0, 0.0], [0.0, 1.0]])
mx = multi_norm(max_spec(), t_l1)
print("max l1 (d1,d2):", mx.value, mx.certified, "(want 2 True)")

t_l2 = VectorTuple.from_array(s2, 2, [[1.0, 0.0], [0.0, 1.0]])
mx2 = multi_norm(max_spec(), t_l2, B)
print("max l2 (e1,e2):", mx2.value, mx2.certified, "(want ~1.4142 False)")

# std:2 on l^1 pair of all-ones: best puts all atoms on one entry
t_ones = VectorTuple.from_array(s2, 1, [[1.0, 1.0], [1.0, 1.0]])
st = standard_q_norm(2, t_ones)
print("std:2 ones:", st.value, st.certified, st.witness, "(want 2 True)")

# std at q = p reproduces lattice
for p in (1, 2, 1.5):
    tp = VectorTuple.from_array(s2, p, [[2.0, -1.0], [0.5, 3.0]])
    a = standard_q_norm(p, tp).value
    b = multi_norm(lattice_spec(), tp).value
    assert abs(a - b) < 1e-12, (p, a, b)
print("std q=p equals lattice ok")

# pq(2,2) on (d1,d2) in l^1: exact sqrt(2)
pq22 = multi_norm(pq_spec(2, 2), t_l1, B)
print("pq:2,2 (d1,d2) l1:", pq22.value, "(want ~1.41421)")

# pq(1,1) matches certified max on random l^1 tuples
rng = np.random.default_rng(7)
worst = 0.0
for _ in range(20):
    c = rng.standard_normal((3, 4))
    sp4 = FiniteMeasureSpace.unit(4)
    tt = VectorTuple.from_array(sp4, 1, c)
    cert = multi_norm(max_spec(), tt).value
    got, _L = __import__("multinorm.norms", fromlist=["x"])._pq_search(1.0, 1.0, tt, B)
    worst = max(worst, abs(got - cert) / cert)
print("pq(1,1) vs certified max, worst rel:", worst, "(want < 2e-2, expect ~0)")

# duals
print("dual(min):", dual_level_norm(parse_spec("dual(min)"), t_diag).value, "(want 7)")
t_rep = VectorTuple.from_array(s2, "inf", [[1.0, 0.0], [1.0, 0.0]])
dm = dual_level_norm(parse_spec("dual(max)"), t_rep)
print("dual(max) (d1,d1) linf:", dm.value, dm.certified, "(want 2 True)")
dl = dual_level_norm(parse_spec("dual(lattice)"), t_l2)
print("dual(lattice) (e1,e2) l2:", dl.value, dl.certified, "(want ~1.41421 True)")
dd = multi_norm(parse_spec("dual(dual(min))"), t_diag)
print("dual(dual(min)):", dd.value, "(want 4)")

# generic dual sampler sanity: dual(pq:1,1) should sit near dual(max)
dg = dual_level_norm(parse_spec("dual(pq:1,1)"), t_rep, B)
print("dual(pq:1,1) sampler:", dg.value, "(lower bound of 2)")

# extension
ex = extension_norm(1, 1, 2, t_l1, B)
print("ext:1,1,2 (d1,d2) l1:", ex.value, "(want 2)")
pqv = multi_norm(pq_spec(1, 2), t_l1, B).value
ex12 = extension_norm(2, 1, 2, t_l1, B).value
print("ext:2,1,2 vs pq:1,2:", ex12, pqv, "rel gap",
      abs(ex12 - pqv) / max(pqv, 1e-12))

# monotone in target size
vals = [extension_norm(2, 1, N, t_l1, B).value for N in (1, 2, 3, 5)]
print("ext monotone in size:", vals, all(vals[i] <= vals[i + 1] + 1e-9 for i in range(3)))

# witness reproduction
wit = ex.witness
imgs = VectorTuple.from_array(
    FiniteMeasureSpace.unit(wit["matrix"].shape[0]), 1, t_l1.coords @ wit["matrix"].T
)
re_val = standard_q_norm(1, imgs).value
print("ext witness reproduces:", abs(re_val - ex.value) < 1e-9)

# upper bounds dominate values
for spec_txt in ["min", "max", "lattice", "std:2", "pq:2,2", "ext:2,1,2",
                 "dual(min)", "dual(max)", "dual(lattice)", "dual(pq:2,2)"]:
    sp = parse_spec(spec_txt)
    for tt, lbl in ((t_l1, "l1"), (t_l2, "l2")):
        try:
            v = multi_norm(sp, tt, B).value
            u = multi_norm_upper(sp, tt)
            assert v <= u + 1e-9, (spec_txt, lbl, v, u)
        except Exception as e:
            print("  skip", spec_txt, lbl, type(e).__name__, e)
print("upper bounds dominate ok")

# axiom reports
small = B.scaled(restarts=8, max_iter=80)
for spec_txt in ["min", "lattice", "std:2", "max", "pq:2,3", "dual(min)", "dual(max)"]:
    sp = parse_spec(spec_txt)
    base = t_l1 if spec_txt not in ("dual(max)",) else t_rep
    rep = axiom_report(sp, base, small)
    worst = max(a["slack"] for a in rep["axioms"])
    print(f"axioms {spec_txt:12s} pass={rep['pass']} worst_slack={worst:.2e}",
          [a["name"] for a in rep["axioms"]])
