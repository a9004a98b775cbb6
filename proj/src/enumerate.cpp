#include "ascentlab/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ascentlab {

namespace {

using Clock = std::chrono::steady_clock;

// Thrown inside the DFS to unwind when a budget trips; never escapes.
struct AbortDfs {};

struct BudgetState {
    std::optional<Clock::time_point> deadline;
    std::optional<unsigned long long> node_limit;
    std::atomic<unsigned long long> nodes{0};
    std::atomic<bool> abort{false};

    static constexpr unsigned long long kBatch = 4096;

    void configure(const EnumerationBudget& budget) {
        if (budget.wall_limit)
            deadline = Clock::now() +
                       std::chrono::duration_cast<Clock::duration>(
                           *budget.wall_limit);
        if (budget.node_limit) {
            // Practical node limits fit a machine word; larger ones are
            // unreachable anyway, so saturate.
            if (budget.node_limit->fits_ulong_p())
                node_limit = budget.node_limit->get_ui();
            else
                node_limit = std::numeric_limits<unsigned long long>::max();
        }
    }

    // Called by each walker every kBatch visited nodes.
    void charge_batch() {
        if (abort.load(std::memory_order_relaxed)) throw AbortDfs{};
        unsigned long long total =
            nodes.fetch_add(kBatch, std::memory_order_relaxed) + kBatch;
        if (node_limit && total > *node_limit) {
            abort.store(true, std::memory_order_relaxed);
            throw AbortDfs{};
        }
        if (deadline && Clock::now() > *deadline) {
            abort.store(true, std::memory_order_relaxed);
            throw AbortDfs{};
        }
    }
};

struct RawPattern {
    const int* data;
    std::size_t size;
};

std::vector<RawPattern> raw_patterns(const PatternSet& P) {
    std::vector<RawPattern> out;
    out.reserve(P.size());
    for (const Pattern& p : P.patterns())
        out.push_back({p.word().letters().data(), p.size()});
    return out;
}

// Depth-first extension over avoiders of P. Sink::visit(seq, len) runs at
// every surviving node; letters are explored in increasing order, so visits
// at any fixed depth happen in lexicographic order.
template <typename Sink>
class Walker {
  public:
    Walker(const std::vector<RawPattern>& pats, int n_target,
           BudgetState* budget, Sink sink)
        : pats_(pats), n_target_(n_target), budget_(budget),
          sink_(std::move(sink)) {}

    // Walks the subtree rooted at the avoider `seq` (asc = its ascent count).
    void run(std::vector<int>& seq, int asc) {
        visit(seq, asc);
    }

  private:
    void visit(std::vector<int>& seq, int asc) {
        if (budget_ && ++local_nodes_ % BudgetState::kBatch == 0)
            budget_->charge_batch();
        const int len = static_cast<int>(seq.size());
        sink_(seq, len);
        if (len >= n_target_) return;
        const int last = seq.back();
        for (int t = 0; t <= asc + 1; ++t) {
            seq.push_back(t);
            bool pruned = false;
            for (const RawPattern& p : pats_) {
                if (p.size > seq.size()) continue;
                if (detail::contains_span(seq.data(), seq.size(), p.data,
                                          p.size, /*pin_last=*/true)) {
                    pruned = true;
                    break;
                }
            }
            if (!pruned) visit(seq, asc + (t > last ? 1 : 0));
            seq.pop_back();
        }
    }

    const std::vector<RawPattern>& pats_;
    int n_target_;
    BudgetState* budget_;
    Sink sink_;
    unsigned long long local_nodes_ = 0;
};

template <typename Sink>
void walk_all(const std::vector<RawPattern>& pats, int n_target,
              BudgetState* budget, Sink sink) {
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(n_target));
    seq.push_back(0);
    Walker<Sink> w(pats, n_target, budget, std::move(sink));
    w.run(seq, 0);
}

void check_inputs(const PatternSet& P, int n, const EnumerationBudget& budget,
                  const char* who) {
    if (n < 1)
        throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (budget.max_n < 1)
        throw std::invalid_argument(std::string(who) +
                                    ": budget.max_n must be >= 1");
    for (const Pattern& p : P.patterns())
        if (p.size() < 2)
            throw InvalidPatternError(
                std::string(who) + ": pattern " + p.str() +
                " is shorter than 2; every nonempty sequence would contain it");
    if (n > budget.max_n)
        throw BudgetExceededError(
            std::string(who) + ": requested n=" + std::to_string(n) +
                " exceeds budget.max_n=" + std::to_string(budget.max_n),
            0);
}

// All avoiders of length `depth` plus per-depth counts for 1..depth, in one
// sequential pass. Used both for small jobs and as the parallel split stage.
struct PrefixStage {
    std::vector<std::vector<int>> prefixes;
    std::vector<Count> counts;  // counts[d-1] = |A_d(P)| for d = 1..depth
};

PrefixStage run_prefix_stage(const std::vector<RawPattern>& pats, int depth,
                             BudgetState* budget) {
    PrefixStage out;
    out.counts.assign(static_cast<std::size_t>(depth), Count(0));
    walk_all(pats, depth, budget, [&](const std::vector<int>& seq, int len) {
        ++out.counts[static_cast<std::size_t>(len - 1)];
        if (len == depth) out.prefixes.push_back(seq);
    });
    return out;
}

int pick_split_depth(const std::vector<RawPattern>& pats, int n, int threads,
                     BudgetState* budget) {
    for (int d = 2; d <= std::min(6, n - 1); ++d) {
        Count c = 0;
        walk_all(pats, d, budget, [&](const std::vector<int>&, int len) {
            if (len == d) ++c;
        });
        if (c >= 4 * threads) return d;
    }
    return std::max(1, std::min(6, n - 1));
}

// Runs fn(task_index) over a pool; rethrows the first worker exception.
void run_pool(int threads, std::size_t num_tasks,
              const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(
        static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    std::size_t i =
                        next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= num_tasks) return;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

int ascents_of(const std::vector<int>& seq) {
    int asc = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] < seq[i + 1]) ++asc;
    return asc;
}

// Shared implementation: per-depth counts to n_max, optionally collecting the
// depth == n_max avoiders. Parallel when threads > 1.
struct SweepResult {
    std::vector<Count> counts;  // counts[d-1], d = 1..n_max
    std::vector<Sequence> leaves;
};

SweepResult sweep(const PatternSet& P, int n_max,
                  const EnumerationBudget& budget, int threads, bool collect) {
    auto pats = raw_patterns(P);
    BudgetState state;
    state.configure(budget);
    SweepResult result;
    result.counts.assign(static_cast<std::size_t>(n_max), Count(0));
    try {
        if (threads <= 1 || n_max <= 3) {
            walk_all(pats, n_max, &state,
                     [&](const std::vector<int>& seq, int len) {
                         ++result.counts[static_cast<std::size_t>(len - 1)];
                         if (collect && len == n_max)
                             result.leaves.emplace_back(seq);
                     });
            return result;
        }
        const int d = pick_split_depth(pats, n_max, threads, &state);
        PrefixStage stage = run_prefix_stage(pats, d, &state);
        for (int i = 0; i < d; ++i)
            result.counts[static_cast<std::size_t>(i)] =
                stage.counts[static_cast<std::size_t>(i)];
        std::vector<std::vector<Count>> task_counts(
            stage.prefixes.size(),
            std::vector<Count>(static_cast<std::size_t>(n_max), Count(0)));
        std::vector<std::vector<Sequence>> task_leaves(stage.prefixes.size());
        run_pool(threads, stage.prefixes.size(), [&](std::size_t i) {
            std::vector<int> seq = stage.prefixes[i];
            auto& mine = task_counts[i];
            auto& leaves = task_leaves[i];
            Walker w(pats, n_max, &state,
                     [&](const std::vector<int>& s, int len) {
                         if (len <= d) return;  // prefix stage owns those
                         ++mine[static_cast<std::size_t>(len - 1)];
                         if (collect && len == n_max) leaves.emplace_back(s);
                     });
            w.run(seq, ascents_of(seq));
        });
        // Deterministic assembly: fixed prefix order regardless of which
        // worker ran which task.
        for (std::size_t i = 0; i < stage.prefixes.size(); ++i) {
            for (int dd = d + 1; dd <= n_max; ++dd)
                result.counts[static_cast<std::size_t>(dd - 1)] +=
                    task_counts[i][static_cast<std::size_t>(dd - 1)];
            for (auto& s : task_leaves[i])
                result.leaves.push_back(std::move(s));
        }
        return result;
    } catch (const AbortDfs&) {
        throw BudgetExceededError("enumeration budget exhausted", 0);
    }
}

}  // namespace

Count count_avoiders(const PatternSet& P, int n,
                     const EnumerationBudget& budget, int threads) {
    check_inputs(P, n, budget, "count_avoiders");
    SweepResult r = sweep(P, n, budget, threads, /*collect=*/false);
    return r.counts.back();
}

std::vector<Sequence> list_avoiders(const PatternSet& P, int n,
                                    const EnumerationBudget& budget,
                                    int threads) {
    check_inputs(P, n, budget, "list_avoiders");
    SweepResult r = sweep(P, n, budget, threads, /*collect=*/true);
    return std::move(r.leaves);
}

CountSeries count_series(const PatternSet& P, int n_max,
                         const EnumerationBudget& budget, int threads) {
    check_inputs(P, n_max, budget, "count_series");
    try {
        SweepResult r = sweep(P, n_max, budget, threads, /*collect=*/false);
        return CountSeries{1, std::move(r.counts)};
    } catch (const BudgetExceededError&) {
        // Establish the largest fully completed n with a bounded retry from
        // the bottom: shallow passes are exponentially cheaper than the pass
        // that just died, so this grace sweep costs a fraction of the spent
        // budget and turns "nothing" into a usable partial answer.
        std::chrono::duration<double> grace = std::chrono::seconds(2);
        if (budget.wall_limit && budget.wall_limit->count() * 0.25 > 2.0)
            grace = *budget.wall_limit * 0.25;
        int completed = 0;
        for (int k = 1; k <= n_max; ++k) {
            EnumerationBudget retry = budget;
            retry.wall_limit = grace;
            try {
                sweep(P, k, retry, 1, /*collect=*/false);
                completed = k;
            } catch (const BudgetExceededError&) {
                break;
            }
        }
        throw BudgetExceededError(
            "count_series: budget exhausted after n=" +
                std::to_string(completed) + " of " + std::to_string(n_max),
            completed);
    }
}

Count count_all_ascent_sequences(int n) {
    if (n < 1)
        throw std::invalid_argument(
            "count_all_ascent_sequences: n must be >= 1");
    // State (ascents, last letter) suffices: the extension bound depends only
    // on the ascent count, and a new ascent appears iff t > last.
    const std::size_t dim = static_cast<std::size_t>(n);
    std::vector<std::vector<Count>> dp(dim, std::vector<Count>(dim, Count(0)));
    dp[0][0] = 1;
    for (int len = 1; len < n; ++len) {
        std::vector<std::vector<Count>> next(
            dim, std::vector<Count>(dim, Count(0)));
        for (std::size_t asc = 0; asc < dim; ++asc)
            for (std::size_t last = 0; last < dim; ++last) {
                const Count& c = dp[asc][last];
                if (c == 0) continue;
                for (std::size_t t = 0; t <= asc + 1; ++t)
                    next[asc + (t > last ? 1 : 0)][t] += c;
            }
        dp.swap(next);
    }
    Count total = 0;
    for (const auto& row : dp)
        for (const Count& c : row) total += c;
    return total;
}

Count count_perm_avoiders_231_4123(int n, int guard_limit) {
    if (n < 1)
        throw std::invalid_argument(
            "count_perm_avoiders_231_4123: n must be >= 1");
    if (n > guard_limit)
        throw BudgetExceededError(
            "count_perm_avoiders_231_4123: n=" + std::to_string(n) +
                " exceeds the factorial-search guard " +
                std::to_string(guard_limit),
            0);
    // On distinct letters, classical containment of 231 / 4123 is word
    // containment of their reductions.
    static const int p231[] = {1, 2, 0};
    static const int p4123[] = {3, 0, 1, 2};
    Count total = 0;
    std::vector<int> prefix;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    auto rec = [&](auto&& self) -> void {
        if (prefix.size() == static_cast<std::size_t>(n)) {
            ++total;
            return;
        }
        for (int v = 1; v <= n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            prefix.push_back(v);
            used[static_cast<std::size_t>(v)] = true;
            bool pruned =
                detail::contains_span(prefix.data(), prefix.size(), p231, 3,
                                      true) ||
                detail::contains_span(prefix.data(), prefix.size(), p4123, 4,
                                      true);
            if (!pruned) self(self);
            used[static_cast<std::size_t>(v)] = false;
            prefix.pop_back();
        }
    };
    rec(rec);
    return total;
}

}  // namespace ascentlab
