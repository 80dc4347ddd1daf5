"""The consistency metrics on their own, with tiny worked inputs."""

import rulefuse as rf

print("Cohen's kappa (decision agreement)")
surrogate = ["no", "no", "no", "yes", "yes", "yes"]
blackbox = ["no", "no", "yes", "no", "yes", "yes"]
print(f"  observed 4/6 agreement -> kappa = {rf.cohen_kappa(surrogate, blackbox):.4f}")
print(f"  identical sequences    -> kappa = {rf.cohen_kappa(surrogate, surrogate):.1f}\n")

print("Mutual inclusion (shared feature sets)")
print(f"  {{age, income}} vs {{age, debt}} -> "
      f"{rf.mutual_inclusion({'age', 'income'}, {'age', 'debt'}):.4f}")
print(f"  equal sets                  -> "
      f"{rf.mutual_inclusion({'age'}, {'age'}):.1f}\n")

print("Kendall's tau over common elements (ranking agreement)")
print(f"  (a,b,c) vs (a,c,b) -> {rf.kendall_tau(('a', 'b', 'c'), ('a', 'c', 'b')):.4f}")
print(f"  (a,b,c) vs (c,b,a) -> {rf.kendall_tau(('a', 'b', 'c'), ('c', 'b', 'a')):.1f}")
print(f"  disjoint orderings -> {rf.kendall_tau(('a', 'b'), ('x', 'y')):.1f}\n")

print("Average rank of rule features in an importance ordering")
fo = rf.FeatureOrdering(("cd9", "cd123", "cd45", "cd20", "td_t", "cd10", "cd22"))
rule_features = ("cd123", "cd9", "cd10", "cd22")
print(f"  ordering: {list(fo.features)}")
print(f"  rule features {rule_features} -> "
      f"average rank {rf.average_rank(rule_features, fo):.1f}\n")

print("Quartile aggregation used in consistency reports")
print(f"  values [0, 0.5, 1] -> {rf.quartile_summary([0.0, 0.5, 1.0])}")
