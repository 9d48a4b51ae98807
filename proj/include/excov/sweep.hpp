#pragma once
// Grid sweep of best_bounds over 5 < d <= n <= n_max with deterministic,
// byte-identical CSV emission regardless of thread count.

#include <optional>
#include <string>
#include <vector>

#include "excov/bounds.hpp"

namespace excov::sweep {

/// One (n, d) cell of the sweep: every bound value flattened into the fixed
/// CSV schema.  rate = (n - d + 1)/n is the rate of the associated MDS code.
/// construction_a is absent exactly at d = n, where Theorem 4 needs t < n-2.
struct SweepCell {
    int n = 0;
    int d = 0;
    double rate = 0.0;
    ExactInt schwartz_vardy_lower;
    ExactInt simple_lower;
    ExactInt schoenheim;
    ExactInt decaen;
    ExactInt se_lower;
    ExactInt probabilistic;
    ExactInt draw_norepl;
    std::optional<ExactInt> construction_a;
    ExactInt construction_b;
    ExactInt recurrent_a;
    ExactInt recurrent_b;
    ExactInt recurrent_c;
    ExactInt schwartz_vardy_upper;
    ExactInt best_lower;
    ExactInt best_upper;
    std::string winner;
};

/// Evaluate a single cell.  Throws std::invalid_argument unless 5 < d <= n,
/// and std::logic_error if any lower bound exceeds any upper bound.
SweepCell make_cell(int n, int d);

/// All cells with 5 < d <= n <= n_max in (n, d)-lexicographic order.
/// threads = 0 picks std::thread::hardware_concurrency(); cells are
/// independent, so the result is identical for every thread count.
/// Throws std::invalid_argument if n_max > 512 (default grid budget).
std::vector<SweepCell> run_sweep(int n_max, int threads = 0);

/// Fixed sweep schema: a "# schema: sweep-v1" comment, the mandatory header
/// row, then one row per cell with construction_a left empty at d = n.
std::string sweep_csv(const std::vector<SweepCell>& cells);

/// Winner-map extract: "# schema: fig1-v1", header, then n,d,winner rows.
std::string fig1_csv(const std::vector<SweepCell>& cells);

/// gnuplot script rendering the winner map from a fig1 CSV file.
std::string fig1_plot_script(const std::string& csv_path);

}  // namespace excov::sweep
