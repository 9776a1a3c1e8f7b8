"""Run a small benchmark suite and print the aligned report tables.

One task per family per scene, four methods, both memory modes. The tables
mirror the shape of the evaluation: success rates per family with Wilson
intervals, then physical-action economy per successful run.
"""

from objsearch.bench import SuiteConfig, generate_suite, render_report, run_suite

tasks = generate_suite(per_family=1, seed=1)
print(f"suite: {len(tasks)} tasks across 3 scenes "
      f"({sum(t.type == 'visible' for t in tasks)} visible, "
      f"{sum(t.type == 'interactive' for t in tasks)} interactive, "
      f"{sum(t.type == 'commonsense' for t in tasks)} commonsense)\n")

config = SuiteConfig(
    methods=("random", "sg_s", "tr_s", "star"),
    modes=("oracle", "realistic"),
    seed=1,
)
report = run_suite(tasks, config)
print(render_report(report))

spatial_share = {}
for method in config.methods:
    eps = [e for e in report.episodes if e["method"] == method]
    total = sum(e["steps_used"] for e in eps)
    spatial = sum(
        e["action_counts"]["perception"] + e["action_counts"]["navigation"]
        + e["action_counts"]["manipulation"]
        for e in eps
    )
    spatial_share[method] = spatial / total if total else 0.0
print("share of spatial (physical) actions per method:")
for method, share in spatial_share.items():
    print(f"  {method:7s} {share:.2f}")
