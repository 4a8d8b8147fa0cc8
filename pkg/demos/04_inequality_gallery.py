"""Walkthrough: the sharp inequality gallery, straight from the harness.

Runs every experiment in the catalog and prints a digest.  `python -m
homothetics.cli verify --all` produces the same rows with exit-code
semantics; here we stay in-process and summarise.
"""

from homothetics.experiments import experiment_ids, run_experiment

DESCRIPTIONS = {
    "asymm": "asymmetry: 1 for symmetric bodies, d for the simplex",
    "core-radii-neg-simplex": "R_k(T, -T) = k, the linear staircase",
    "lemma-cd": "symmetric container pins low core radii at (d+1)/2",
    "henk": "Euclidean ratio bound sqrt(k(l+1)/(l(k+1))), tight on T",
    "jung": "a farthest pair is already a (sqrt 2 - 1)-core-set",
    "bohnenblust": "R/R_1 <= (1+s)d/(d+1), tight on the simplex",
    "identity-radii": "subsets, sections and cylinders agree",
    "symm-bound": "symmetric containers cap the ratio at 2k/(k+1)",
    "coreset-meb": "ball core-sets: ceil(1/(2e+e^2))+1, dimension-free",
    "coreset-linear": "general core-sets: ceil(d/(1+e))+1, no better",
    "center-conformity": "center reuse costs e + sqrt(2e+e^2) extra",
    "panigrahy": "the missing vertex stays far from any d-point cover",
    "parallelotope": "boxes: two points always carry the full radius",
}

total_rows = 0
failures = 0
for name in experiment_ids():
    report = run_experiment(name)
    bad = [r for r in report.rows if not r.passed]
    total_rows += len(report.rows)
    failures += len(bad)
    flag = "ok " if not bad else "FAIL"
    print(f"[{flag}] {name:24s} {len(report.rows):4d} rows  {report.runtime:6.2f}s  "
          f"{DESCRIPTIONS[name]}")
    for r in bad[:3]:
        print(f"       -> {r.instance} {r.param}: got {r.computed}, want {r.reference}")

print()
print(f"{total_rows} rows checked, {failures} failures")

print()
print("one sample of raw rows (the sharp staircase):")
for line in run_experiment("core-radii-neg-simplex", {"dims": (4,)}).to_csv_rows():
    print("  " + line)
