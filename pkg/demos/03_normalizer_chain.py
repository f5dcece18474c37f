"""
Climbing the normalizer chain
=============================

Start from the normalizer of the translation subgroup and repeatedly
take normalizers.  In a 2-group the chain grows strictly until it hits
the whole group; the interesting data is how fast, level by level.
"""

from rigidcomm import run_chain, translation_normalizer_set, verify_theoretical

n = 6

base = translation_normalizer_set(n)
print(f"baseline: {len(base.members)} members, log2 order {base.log2_order}")
print("members:", " ".join(str(c) for c in base.members))
print()

report = run_chain(n)
print(f"chain reached the full group at step {report.terminated_at}")
print()
print("  i  log2|N^i|  log2 index  dims (levels 6..1)")
for s in report.steps:
    dims = ",".join(str(d) for d in reversed(s.level_dims))
    print(f"{s.i:>3}  {s.log2_order:>9}  {s.index_log2:>10}  {dims}")
print()

# what arrived at the first two steps
print("step 1 adds:", " ".join(str(c) for c in report.steps[1].new_members))
print("step 2 adds:", " ".join(str(c) for c in report.steps[2].new_members))
print()

# the early terms match a closed-form description built from partitions
print("closed-form check per step:", verify_theoretical(report))
