"""How far a part can stretch: the chain family.

Clients v_1..v_t with fault tolerance ell = a sit on a line two apart, each
with its own group of unit-distance facilities, and only one client must be
served. The harmonic coverage preset cov_{v_a} = 1/(a H_t) is feasible at
radius 1, yet the chain partition builder merges everything into a single
part whose realized radius around the head grows like 2(t-1) — the lower
bound that forces the radius parameter of any partition scheme to grow
with t.
"""

from fkso import gen_limit_instance, limit_instance_cov
from fkso.general import build_partition_chain, verify_good_partition
from fkso.lpcore import build_cov_polytope, point_feasible

for t in range(2, 6):
    inst = gen_limit_instance(t, t)
    preset = limit_instance_cov(t)
    feasible = point_feasible(
        build_cov_polytope(inst, 1.0),
        {("cov", v): preset[v] for v in inst.clients})
    gp = build_partition_chain(inst, preset, 1.0)
    head = gp.heads[0]
    realized = max(inst.dist[head, v] for v in gp.parts[0])
    ok, _ = verify_good_partition(inst, gp, gp.rho)
    print(f"t={t}: preset feasible={feasible}, parts={len(gp.parts)}, "
          f"head=v_{head + 1}, part radius {realized:g} "
          f"(= 2(t-1) = {2 * (t - 1)}), "
          f"builder bound rho*r = {gp.rho:g}, verifies: {ok}")
