"""Batch scenario run on the bundled 754-node topology.

Sweeps the client count and shows how the saving of the DP solver over
direct delivery widens as more clients share the tree, then writes one
full scenario as CSV.  Uses few samples to stay quick; raise `samples`
for smoother numbers.
"""

import io

from mmds.cli import ScenarioConfig, run_scenario, write_csv

try:
    from importlib.resources import files
    KDL = str(files("mmds.data") / "kdl_754_895.gml")
except Exception:
    KDL = "src/mmds/data/kdl_754_895.gml"

print("client sweep on the bundled wide-area topology (K=12, D=5):")
for clients in (100, 200, 400):
    cfg = ScenarioConfig(topology=KDL, fmt="gml", views=12, clients=clients,
                         dist="uniform", d=5, solvers=("omds", "mmdea"),
                         samples=10, seed=1)
    rows = run_scenario(cfg)
    means = {r["solver"]: r["total_bandwidth"] for r in rows
             if r["sample"] == "mean"}
    saving = 1 - means["mmdea"] / means["omds"]
    print(f"  clients={clients:3d}: omds={means['omds']:8.1f} "
          f"mmdea={means['mmdea']:8.1f}  saving={saving:5.1%}")

print("\nfull CSV for one configuration (first lines):")
cfg = ScenarioConfig(topology=KDL, fmt="gml", views=12, clients=100,
                     dist="zipf:2", d=5, solvers=("omds", "mmdea", "hmmdea"),
                     samples=5, seed=42)
buf = io.StringIO()
write_csv(run_scenario(cfg), buf)
print("\n".join(buf.getvalue().splitlines()[:8]))
