#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace h22 {

// One machine-verified identity: how many instances ran, the worst error,
// and how many violated the identity or bound.
struct SuiteResult {
  std::string name;
  long instances = 0;
  double max_error = 0.0;
  long violations = 0;
  bool pass = false;
  std::string note;
};

// Exact quadrature of the partition function equals 1 across pinning
// schemes, couplings and boundary conditions. Tolerance 1e-6.
SuiteResult suite_normalization(bool quick);

// (D^{-1})_{xy} <= e^{t_x}/eps_x + e^{t_y}/eps_y on random configurations.
SuiteResult suite_inverse_pinning_bound(std::uint64_t seed, long n_configs);

// Walk-sum expansion of (M^{-1})_{xy} det M on random matrices and on model
// kernels. Tolerance 1e-10 relative.
SuiteResult suite_path_expansion(std::uint64_t seed, int n_random, int n_kernel);

// det of the path-deleted kernel equals the corresponding minor.
SuiteResult suite_path_deleted_determinant(std::uint64_t seed, int n_instances);

// Conditioned partition function obeys the translation bound; also checks
// the exact value 1 at frozen path fields t = 0.
SuiteResult suite_conditioned_partition_bound(std::uint64_t seed, int n_instances);

// Matrix-tree identity for the conductance matrix under single pinning.
SuiteResult suite_matrix_tree(std::uint64_t seed, int n_per_graph);

// eps_s e^{t_s} (A^{-1})_{s,x} = 1 for every x, random configs on 3x3.
SuiteResult suite_single_pinning_inverse(std::uint64_t seed, int n_configs);

// logdet A = logdet D + 2 sum_j t_j.
SuiteResult suite_gauge_conjugation(std::uint64_t seed, int n_configs);

// Closed forms: sqrt(b/2pi) int cosh(t/2) e^{-b(cosh t - 1)} dt = 1 and
// int e^{t/2} e^{-e(cosh t - 1)} dt / sqrt(2pi) = 1/sqrt(e). Tolerance 1e-8.
SuiteResult suite_closed_forms();

// One-site integral bounds and the critical coupling: I < 1 on a grid,
// I <= sqrt(b) ln(1/b) for small b, critical beta infinite in 1d and below
// (2d-1)^{-2} with residual <= 1e-9 for d = 2, 3.
SuiteResult suite_critical_coupling();

std::vector<SuiteResult> run_identity_suites(std::uint64_t seed, bool quick);

}  // namespace h22
