#include "excov/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace excov::sweep {

namespace {

constexpr int kSweepMaxN = 512;

const ExactInt& find_bound(const std::vector<bounds::BoundResult>& v, bounds::BoundName name) {
    for (const auto& b : v)
        if (b.name == name) return b.value;
    throw std::logic_error("sweep: bound missing from best_bounds: " + bounds::bound_label(name));
}

const ExactInt* find_bound_opt(const std::vector<bounds::BoundResult>& v, bounds::BoundName name) {
    for (const auto& b : v)
        if (b.name == name) return &b.value;
    return nullptr;
}

}  // namespace

SweepCell make_cell(int n, int d) {
    bounds::BestBounds bb = bounds::best_bounds(n, d);
    SweepCell cell;
    cell.n = n;
    cell.d = d;
    cell.rate = static_cast<double>(n - d + 1) / n;
    cell.schwartz_vardy_lower = find_bound(bb.lowers, bounds::BoundName::schwartz_vardy_lower);
    cell.simple_lower = find_bound(bb.lowers, bounds::BoundName::simple_lower);
    cell.schoenheim = find_bound(bb.lowers, bounds::BoundName::schoenheim);
    cell.decaen = find_bound(bb.lowers, bounds::BoundName::decaen);
    cell.se_lower = find_bound(bb.lowers, bounds::BoundName::se_lower);
    cell.probabilistic = find_bound(bb.uppers, bounds::BoundName::probabilistic);
    cell.draw_norepl = find_bound(bb.uppers, bounds::BoundName::draw_norepl);
    if (const ExactInt* a = find_bound_opt(bb.uppers, bounds::BoundName::construction_a))
        cell.construction_a = *a;
    cell.construction_b = find_bound(bb.uppers, bounds::BoundName::construction_b);
    cell.recurrent_a = find_bound(bb.uppers, bounds::BoundName::recurrent_a);
    cell.recurrent_b = find_bound(bb.uppers, bounds::BoundName::recurrent_b);
    cell.recurrent_c = find_bound(bb.uppers, bounds::BoundName::recurrent_c);
    cell.schwartz_vardy_upper = find_bound(bb.uppers, bounds::BoundName::schwartz_vardy_upper);
    cell.best_lower = bb.best_lower;
    cell.best_upper = bb.best_upper;
    cell.winner = bounds::bound_label(bb.winner);
    return cell;
}

std::vector<SweepCell> run_sweep(int n_max, int threads) {
    if (n_max > kSweepMaxN)
        throw std::invalid_argument("run_sweep: n_max exceeds the 512 grid budget");
    std::vector<std::pair<int, int>> grid;
    for (int n = 6; n <= n_max; ++n)
        for (int d = 6; d <= n; ++d) grid.emplace_back(n, d);

    std::vector<SweepCell> cells(grid.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > static_cast<int>(grid.size())) threads = static_cast<int>(std::max<size_t>(grid.size(), 1));

    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= grid.size()) return;
            try {
                cells[idx] = make_cell(grid[idx].first, grid[idx].second);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
    std::string out =
        "# schema: sweep-v1\n"
        "n,d,rate,schwartz_vardy_lower,simple_lower,schoenheim,decaen,se_lower,"
        "probabilistic,draw_norepl,construction_a,construction_b,recurrent_a,"
        "recurrent_b,recurrent_c,schwartz_vardy_upper,best_upper,winner\n";
    char head[64];
    for (const auto& c : cells) {
        std::snprintf(head, sizeof head, "%d,%d,%.6f,", c.n, c.d, c.rate);
        out += head;
        out += c.schwartz_vardy_lower.get_str() + ',';
        out += c.simple_lower.get_str() + ',';
        out += c.schoenheim.get_str() + ',';
        out += c.decaen.get_str() + ',';
        out += c.se_lower.get_str() + ',';
        out += c.probabilistic.get_str() + ',';
        out += c.draw_norepl.get_str() + ',';
        if (c.construction_a) out += c.construction_a->get_str();
        out += ',';
        out += c.construction_b.get_str() + ',';
        out += c.recurrent_a.get_str() + ',';
        out += c.recurrent_b.get_str() + ',';
        out += c.recurrent_c.get_str() + ',';
        out += c.schwartz_vardy_upper.get_str() + ',';
        out += c.best_upper.get_str() + ',';
        out += c.winner;
        out += '\n';
    }
    return out;
}

std::string fig1_csv(const std::vector<SweepCell>& cells) {
    std::string out =
        "# schema: fig1-v1\n"
        "n,d,winner\n";
    char head[32];
    for (const auto& c : cells) {
        std::snprintf(head, sizeof head, "%d,%d,", c.n, c.d);
        out += head;
        out += c.winner;
        out += '\n';
    }
    return out;
}

std::string fig1_plot_script(const std::string& csv_path) {
    static const char* kWinners[] = {
        "probabilistic",   "construction_a", "construction_b",       "recurrent_a",
        "recurrent_b",     "recurrent_c",    "schwartz_vardy_upper",
    };
    std::string out;
    out += "# gnuplot script: winner map of the tightest upper bound per (n, d) cell\n";
    out += "set datafile separator comma\n";
    out += "set xlabel 'n'\n";
    out += "set ylabel 'd'\n";
    out += "set key outside right\n";
    out += "set title 'Tightest upper bound per cell'\n";
    out += "plot \\\n";
    const size_t count = sizeof(kWinners) / sizeof(kWinners[0]);
    for (size_t i = 0; i < count; ++i) {
        out += "  '" + csv_path + "' using (stringcolumn(3) eq '" + kWinners[i] +
               "' ? $1 : 1/0):($2) with points pointtype " + std::to_string(i + 1) +
               " title '" + kWinners[i] + "'";
        out += (i + 1 < count) ? ", \\\n" : "\n";
    }
    return out;
}

}  // namespace excov::sweep
