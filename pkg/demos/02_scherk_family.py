"""The eight Scherk-type patches, their implicit equations and the maps between them."""
from zmc import catalog as C
from zmc import verify as V

for k in range(1, 5):
    for primed in ("", "p"):
        e = C.get(f"scherk_S{k}{primed}")
        pts = e.sample_points(50)
        res = V.membership_residual(pts, e.implicit)
        print(f"{e.name:11s} {e.implicit.formula:28s} {pts.shape[1]:5d} points  residual {res:.1e}")

print("\nexplicit congruences")
for a, b in (("scherk_S4", "scherk_S1p"), ("scherk_S4p", "scherk_S1"),
             ("scherk_S3", "scherk_S2p"), ("scherk_S3p", "scherk_S2"), ("graph_K4", "scherk_S4")):
    iso, res = V.find_isometry(C.get(a).sample_points(30), C.get(b).implicit)
    print(f"{a:10s} -> {b:10s} perm={iso.perm} signs={iso.signs} t_sign={iso.t_sign} "
          f"shift={tuple(round(s, 4) for s in iso.shift)}  residual {res:.1e}")

print("\nnon-congruent classes:")
for c in C.NON_CONGRUENT_SCHERK:
    print("  ", c)
