"""
Experiment drivers: comparison, margin sweep, ablation, learning curve
======================================================================

Four drivers wrap the cross-validation harness and render tab-separated
tables.  A 12-document corpus keeps this script quick; the package
defaults target the 40-document corpus.
"""

from clinrel.experiments import (
    experiment_ablation,
    experiment_algorithms,
    experiment_learning_curve,
    experiment_tau_sweep,
)
from clinrel.synth import GeneratorConfig, generate_synthetic

corpus = generate_synthetic(GeneratorConfig(n_docs=12))
k = 4

# All five learners under one shared fold plan.
print("=== algorithm comparison ===")
print(experiment_algorithms(corpus, k=k).to_table())

# The margin parameter is swept over one base SVM solution per fold and
# class, so five columns cost little more than one.
print("=== uneven-margin sweep ===")
print(experiment_tau_sweep(corpus, k=k).to_table())

# Cumulative feature columns, then the alias bundles, then the syntactic
# additions; the shared column is computed once.
print("=== feature ablation (naive bayes for speed) ===")
print(experiment_ablation(corpus, algorithm="nb", k=k).to_table())

# Document-prefix subsets of growing size under the same protocol.
print("=== learning curve ===")
print(experiment_learning_curve(corpus, algorithm="nb", k=k).to_table())
