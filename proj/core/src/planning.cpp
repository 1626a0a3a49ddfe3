#include "timepref/planning.hpp"

#include "timepref/valuation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace timepref {

namespace {

constexpr size_t kSequenceCompareHorizon = 512;
constexpr Real kNegInf = -std::numeric_limits<Real>::infinity();

long long int_pow_capped(long long base, int exp, long long cap) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

// value iteration for per-objective optimistic/pessimistic bounds; the
// reward and discount tables are passed separately so the naive scorer can
// reuse it with the gamma_sigma table
void value_bounds(const GeneralizedMdp& dynamics, const std::vector<Real>& reward,
                  const std::vector<Real>& discount, std::vector<Real>& hi,
                  std::vector<Real>& lo) {
    const int n = dynamics.num_states;
    const int m = dynamics.num_actions;
    hi.assign(n, 0.0);
    lo.assign(n, 0.0);
    auto sweep = [&](std::vector<Real>& v, bool maximize) {
        for (int iter = 0; iter < 100000; ++iter) {
            Real delta = 0.0;
            for (State s = 0; s < n; ++s) {
                Real best = maximize ? kNegInf : -kNegInf;
                for (Action a = 0; a < m; ++a) {
                    const int idx = dynamics.pair_index(s, a);
                    Real q = reward[idx];
                    const auto& row = dynamics.transition[idx];
                    Real ev = 0.0;
                    for (State t = 0; t < n; ++t) ev += row[t] * v[t];
                    q += discount[idx] * ev;
                    best = maximize ? std::max(best, q) : std::min(best, q);
                }
                delta = std::max(delta, std::abs(best - v[s]));
                v[s] = best;
            }
            if (delta < 1e-13) return;
        }
        throw DivergenceError("value iteration did not converge: dynamics do not contract");
    };
    sweep(hi, true);
    sweep(lo, false);
}

} // namespace

std::vector<PolicySpec> enumerate_stationary(const ObjectiveSet& objs, long long cap) {
    const int n = objs.num_states();
    const int m = objs.num_actions();
    const long long count = int_pow_capped(m, n, cap);
    if (count > cap)
        throw PlannerCapError("stationary enumeration needs |A|^|S| = " +
                              std::to_string(m) + "^" + std::to_string(n) +
                              " policies, above the cap of " + std::to_string(cap));
    std::vector<PolicySpec> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<Action> actions(n, 0);
    for (long long k = 0; k < count; ++k) {
        long long rem = k;
        // lexicographic: leftmost state varies slowest
        for (int s = n - 1; s >= 0; --s) {
            actions[s] = static_cast<Action>(rem % m);
            rem /= m;
        }
        out.push_back(PolicySpec::deterministic(actions));
    }
    return out;
}

BestStationaryResult best_stationary(const ObjectiveSet& objs, const WeightState& ws,
                                     State start, long long cap) {
    if (ws.size() != objs.size())
        throw std::invalid_argument("weight state does not match objective set");
    const auto policies = enumerate_stationary(objs, cap);
    BestStationaryResult best;
    Real best_value = kNegInf;
    bool found = false;
    for (const PolicySpec& pi : policies) {
        Real v = ws.constant;
        try {
            for (int i = 0; i < objs.size(); ++i)
                v += ws.weights[i] * evaluate_stationary(objs.objective(i).mdp, pi)[start];
        } catch (const DivergenceError&) {
            continue; // non-contracting candidate
        }
        if (!found || v > best_value) {
            found = true;
            best_value = v;
            best.policy = pi;
            best.actions = std::get<StationaryDeterministic>(pi.node).action_of_state;
        }
    }
    if (!found) throw DivergenceError("no stationary policy contracts");
    best.value = best_value;
    return best;
}

// ---------------------------------------------------------------------------
// Planner

Planner::Planner(const ObjectiveSet& objs, PlanConfig cfg, bool consistent,
                 GammaSigmaStrategy naive_strategy, const WeightState* naive_weights)
    : objs_(objs), cfg_(std::move(cfg)), consistent_(consistent),
      num_objectives_(objs.size()) {
    if (!objs.dynamics().deterministic())
        throw std::invalid_argument(
            "prefix+tail planning requires deterministic dynamics; use plan_expectimax");
    if (cfg_.horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    if (cfg_.max_cycle_period < 1) throw std::invalid_argument("cycle period must be >= 1");

    const GeneralizedMdp& dyn = objs.dynamics();
    const int S = dyn.num_states;
    const int A = dyn.num_actions;

    // scoring discount tables
    score_discount_.resize(num_objectives_);
    if (consistent_) {
        for (int i = 0; i < num_objectives_; ++i)
            score_discount_[i] = objs.objective(i).mdp.discount;
    } else {
        if (naive_strategy.kind == GammaSigmaStrategy::Kind::WeightNormalizing &&
            naive_weights == nullptr)
            throw std::invalid_argument(
                "naive scoring with weight-normalizing gamma_sigma needs initial weights");
        WeightState unit = WeightState::initial(std::vector<Real>(num_objectives_, 1.0));
        const WeightState& wref = naive_weights ? *naive_weights : unit;
        std::vector<Real> table(static_cast<size_t>(S) * A, 0.0);
        for (State s = 0; s < S; ++s)
            for (Action a = 0; a < A; ++a)
                table[dyn.pair_index(s, a)] = gamma_sigma(naive_strategy, wref, s, a, objs);
        for (int i = 0; i < num_objectives_; ++i) score_discount_[i] = table;
    }

    // tail candidates
    if (cfg_.explicit_tails) {
        tails_ = *cfg_.explicit_tails;
    } else {
        const long long count = int_pow_capped(A, S, cfg_.enumeration_cap);
        if (count > cfg_.enumeration_cap)
            throw PlannerCapError("default tail set needs |A|^|S| stationary policies, "
                                  "above the enumeration cap");
        std::vector<Action> actions(S, 0);
        for (long long k = 0; k < count; ++k) {
            long long rem = k;
            for (int s = S - 1; s >= 0; --s) {
                actions[s] = static_cast<Action>(rem % A);
                rem /= A;
            }
            tails_.push_back({TailCandidate::Kind::Stationary, actions});
        }
        // primitive cycles only: a repeated shorter cycle realizes the same
        // trajectory
        for (int len = 1; len <= cfg_.max_cycle_period; ++len) {
            std::vector<Action> cyc(len, 0);
            const long long total = int_pow_capped(A, len, std::numeric_limits<long long>::max() / 2);
            for (long long k = 0; k < total; ++k) {
                long long rem = k;
                for (int p = len - 1; p >= 0; --p) {
                    cyc[p] = static_cast<Action>(rem % A);
                    rem /= A;
                }
                bool primitive = true;
                for (int d = 1; d < len && primitive; ++d) {
                    if (len % d != 0) continue;
                    bool rep = true;
                    for (int p = d; p < len && rep; ++p) rep = (cyc[p] == cyc[p % d]);
                    if (rep) primitive = false;
                }
                if (primitive) tails_.push_back({TailCandidate::Kind::Cycle, cyc});
            }
        }
    }
    if (tails_.empty()) throw std::invalid_argument("tail candidate set is empty");

    const size_t T = tails_.size();
    realizations_.resize(static_cast<size_t>(S) * T);
    tail_valid_.assign(static_cast<size_t>(S) * T, 0);
    tail_value_.assign(static_cast<size_t>(S) * T * num_objectives_, 0.0);

    // realize every tail from every state and take per-objective closed-form
    // values; tails whose realized cycle does not contract are rejected
    for (State s0 = 0; s0 < S; ++s0) {
        for (size_t t = 0; t < T; ++t) {
            const TailCandidate& tc = tails_[t];
            Realization& rz = realizations_[static_cast<size_t>(s0) * T + t];
            const bool cyclic = tc.kind == TailCandidate::Kind::Cycle;
            const size_t L = cyclic ? tc.actions.size() : 1;
            std::vector<int> seen(static_cast<size_t>(S) * L, -1);
            std::vector<Step> walk;
            State s = s0;
            size_t pos = 0;
            while (true) {
                const size_t key = static_cast<size_t>(s) * L + (cyclic ? pos % L : 0);
                if (seen[key] >= 0) {
                    const size_t split = static_cast<size_t>(seen[key]);
                    rz.pre.assign(walk.begin(), walk.begin() + static_cast<long>(split));
                    rz.cyc.assign(walk.begin() + static_cast<long>(split), walk.end());
                    break;
                }
                seen[key] = static_cast<int>(walk.size());
                const Action a = cyclic ? tc.actions[pos % L] : tc.actions[s];
                walk.push_back({s, a});
                s = dyn.successor(s, a);
                ++pos;
            }

            bool ok = true;
            for (int i = 0; i < num_objectives_ && ok; ++i) {
                const GeneralizedMdp& m = objs.objective(i).mdp;
                const std::vector<Real>& disc = score_discount_[i];
                Real value = 0.0, acc = 1.0;
                for (const Step& st : rz.pre) {
                    value += acc * m.reward_at(st.state, st.action);
                    acc *= disc[m.pair_index(st.state, st.action)];
                }
                Real cv = 0.0, cg = 1.0;
                for (const Step& st : rz.cyc) {
                    cv += cg * m.reward_at(st.state, st.action);
                    cg *= disc[m.pair_index(st.state, st.action)];
                }
                if (cg >= 1.0) {
                    ok = false;
                    break;
                }
                value += acc * cv / (1.0 - cg);
                tail_value_[(static_cast<size_t>(s0) * T + t) * num_objectives_ + i] = value;
            }
            tail_valid_[static_cast<size_t>(s0) * T + t] = ok ? 1 : 0;
        }
    }

    // lexicographic rank of tail realizations per start state, for tie-breaks
    tail_rank_.assign(static_cast<size_t>(S) * T, 0);
    {
        std::vector<int> order(T);
        for (State s = 0; s < S; ++s) {
            std::iota(order.begin(), order.end(), 0);
            auto lex_less = [&](int a, int b) {
                const Realization& ra = realization(s, a);
                const Realization& rb = realization(s, b);
                for (size_t k = 0; k < kSequenceCompareHorizon; ++k) {
                    const Action xa = ra.at(k).action;
                    const Action xb = rb.at(k).action;
                    if (xa != xb) return xa < xb;
                }
                return false;
            };
            std::stable_sort(order.begin(), order.end(), lex_less);
            for (size_t r = 0; r < T; ++r)
                tail_rank_[static_cast<size_t>(s) * T + order[r]] = static_cast<int>(r);
        }
    }

    // per-objective value bounds for branch-and-bound
    value_hi_.resize(static_cast<size_t>(num_objectives_) * S);
    value_lo_.resize(static_cast<size_t>(num_objectives_) * S);
    for (int i = 0; i < num_objectives_; ++i) {
        std::vector<Real> hi, lo;
        value_bounds(dyn, objs.objective(i).mdp.reward, score_discount_[i], hi, lo);
        std::copy(hi.begin(), hi.end(), value_hi_.begin() + static_cast<size_t>(i) * S);
        std::copy(lo.begin(), lo.end(), value_lo_.begin() + static_cast<size_t>(i) * S);
    }
}

struct Planner::Search {
    const Planner& pl;
    const WeightState& ws;
    State start;
    long long nodes = 0;

    Real best_value = kNegInf;           // anchor of the near-tie band
    Real best_candidate_value = kNegInf; // exact value of the stored candidate
    std::vector<Action> best_prefix;
    int best_tail = -1;
    State best_tail_state = 0;
    bool have_best = false;

    std::vector<Action> prefix;

    // per-objective max/min valid tail values per state, computed lazily per
    // search (they depend only on the planner tables, but are cheap)
    std::vector<Real> max_tv, min_tv; // [s * I + i]

    explicit Search(const Planner& p, const WeightState& w, State s0)
        : pl(p), ws(w), start(s0) {
        const int S = pl.objs_.num_states();
        const int I = pl.num_objectives_;
        const size_t T = pl.tails_.size();
        max_tv.assign(static_cast<size_t>(S) * I, kNegInf);
        min_tv.assign(static_cast<size_t>(S) * I, -kNegInf);
        for (State s = 0; s < S; ++s) {
            for (size_t t = 0; t < T; ++t) {
                if (!pl.tail_valid_[static_cast<size_t>(s) * T + t]) continue;
                for (int i = 0; i < I; ++i) {
                    const Real v =
                        pl.tail_value_[(static_cast<size_t>(s) * T + t) * I + i];
                    auto& hi = max_tv[static_cast<size_t>(s) * I + i];
                    auto& lo = min_tv[static_cast<size_t>(s) * I + i];
                    hi = std::max(hi, v);
                    lo = std::min(lo, v);
                }
            }
        }
    }

    Action realized_action(const std::vector<Action>& pre, State tail_state, int tail,
                           size_t k) const {
        if (k < pre.size()) return pre[k];
        return pl.realization(tail_state, tail).at(k - pre.size()).action;
    }

    // lexicographic comparison of two candidates' realized action sequences;
    // <0, 0, >0 like strcmp
    int compare_candidates(const std::vector<Action>& pa, State sa, int ta,
                           const std::vector<Action>& pb, State sb, int tb) const {
        for (size_t k = 0; k < kSequenceCompareHorizon; ++k) {
            const Action xa = realized_action(pa, sa, ta, k);
            const Action xb = realized_action(pb, sb, tb, k);
            if (xa != xb) return xa < xb ? -1 : 1;
        }
        return 0;
    }

    void offer(Real value, State tail_state, int tail) {
        if (!have_best || value > best_value + pl.cfg_.tie_tolerance) {
            have_best = true;
            best_value = value;
            best_candidate_value = value;
            best_prefix = prefix;
            best_tail = tail;
            best_tail_state = tail_state;
            return;
        }
        if (value < best_value - pl.cfg_.tie_tolerance) return;
        best_value = std::max(best_value, value);
        const int cmp = compare_candidates(prefix, tail_state, tail, best_prefix,
                                           best_tail_state, best_tail);
        if (cmp < 0 || (cmp == 0 && prefix.size() < best_prefix.size())) {
            best_candidate_value = value;
            best_prefix = prefix;
            best_tail = tail;
            best_tail_state = tail_state;
        }
    }

    void scan_tails(State s, Real acc, const std::vector<Real>& gam) {
        const int I = pl.num_objectives_;
        const size_t T = pl.tails_.size();
        Real node_max = kNegInf;
        for (size_t t = 0; t < T; ++t) {
            if (!pl.tail_valid_[static_cast<size_t>(s) * T + t]) continue;
            Real v = acc;
            for (int i = 0; i < I; ++i)
                v += ws.weights[i] * gam[i] *
                     pl.tail_value_[(static_cast<size_t>(s) * T + t) * I + i];
            node_max = std::max(node_max, v);
        }
        if (node_max == kNegInf) return;
        if (have_best && node_max < best_value - pl.cfg_.tie_tolerance) return;

        int pick = -1;
        int pick_rank = std::numeric_limits<int>::max();
        Real pick_value = 0.0;
        for (size_t t = 0; t < T; ++t) {
            if (!pl.tail_valid_[static_cast<size_t>(s) * T + t]) continue;
            Real v = acc;
            for (int i = 0; i < I; ++i)
                v += ws.weights[i] * gam[i] *
                     pl.tail_value_[(static_cast<size_t>(s) * T + t) * I + i];
            if (v < node_max - pl.cfg_.tie_tolerance) continue;
            const int rank = pl.tail_rank_[static_cast<size_t>(s) * T + t];
            if (rank < pick_rank) {
                pick_rank = rank;
                pick = static_cast<int>(t);
                pick_value = v;
            }
        }
        if (pick >= 0) offer(pick_value, s, pick);
    }

    void dfs(State s, int depth, Real acc, std::vector<Real>& gam) {
        if (++nodes > pl.cfg_.node_budget)
            throw PlannerCapError("plan search exceeded the node budget");

        const int I = pl.num_objectives_;

        // can any tail at this node compete?
        Real tail_ub = acc;
        bool has_tail = true;
        for (int i = 0; i < I; ++i) {
            const Real bound = ws.weights[i] >= 0
                                   ? max_tv[static_cast<size_t>(s) * I + i]
                                   : min_tv[static_cast<size_t>(s) * I + i];
            if (std::isinf(bound)) {
                has_tail = false;
                break;
            }
            tail_ub += ws.weights[i] * gam[i] * bound;
        }
        if (has_tail && (!have_best || tail_ub >= best_value - pl.cfg_.tie_tolerance))
            scan_tails(s, acc, gam);

        if (depth == pl.cfg_.horizon) return;

        // can any descendant compete?
        Real subtree_ub = acc;
        const int S = pl.objs_.num_states();
        for (int i = 0; i < I; ++i) {
            const Real bound = ws.weights[i] >= 0
                                   ? pl.value_hi_[static_cast<size_t>(i) * S + s]
                                   : pl.value_lo_[static_cast<size_t>(i) * S + s];
            subtree_ub += ws.weights[i] * gam[i] * bound;
        }
        if (have_best && subtree_ub < best_value - pl.cfg_.tie_tolerance) return;

        const GeneralizedMdp& dyn = pl.objs_.dynamics();
        std::vector<Real> next_gam(I);
        for (Action a = 0; a < dyn.num_actions; ++a) {
            Real next_acc = acc;
            for (int i = 0; i < I; ++i) {
                const GeneralizedMdp& m = pl.objs_.objective(i).mdp;
                next_acc += ws.weights[i] * gam[i] * m.reward_at(s, a);
                next_gam[i] = gam[i] * pl.score_discount_[i][m.pair_index(s, a)];
            }
            prefix.push_back(a);
            dfs(dyn.successor(s, a), depth + 1, next_acc, next_gam);
            prefix.pop_back();
        }
    }
};

PlanResult Planner::plan(const WeightState& ws, State start) const {
    if (ws.size() != num_objectives_)
        throw std::invalid_argument("weight state does not match objective set");
    if (start < 0 || start >= objs_.num_states())
        throw std::invalid_argument("start state out of range");

    Search search(*this, ws, start);
    std::vector<Real> gam(num_objectives_, 1.0);
    search.dfs(start, 0, ws.constant, gam);
    if (!search.have_best)
        throw DivergenceError("no tail candidate contracts: divergent tails rejected");

    PlanResult out;
    out.prefix_actions = search.best_prefix;
    out.tail_index = search.best_tail;

    const GeneralizedMdp& dyn = objs_.dynamics();
    State s = start;
    for (Action a : search.best_prefix) {
        out.trajectory.prefix.push_back({s, a});
        s = dyn.successor(s, a);
    }
    const Realization& rz = realization(s, search.best_tail);
    out.trajectory.prefix.insert(out.trajectory.prefix.end(), rz.pre.begin(), rz.pre.end());
    out.trajectory.cycle = rz.cyc;

    out.value = consistent_ ? aggregate_trajectory_value(objs_, ws, out.trajectory)
                            : search.best_candidate_value;
    return out;
}

PlanResult plan_prefix_tail(const ObjectiveSet& objs, const WeightState& ws, State start,
                            const PlanConfig& cfg, bool consistent,
                            GammaSigmaStrategy naive_strategy) {
    Planner planner(objs, cfg, consistent, naive_strategy, &ws);
    return planner.plan(ws, start);
}

// ---------------------------------------------------------------------------
// expectimax over stochastic dynamics

PolicyTreeNode plan_expectimax(const ObjectiveSet& objs, const WeightState& ws, State start,
                               const PlanConfig& cfg) {
    // leaf tails: stationary policies only (cycle realizations are undefined
    // under stochastic dynamics); values by linear solve per objective
    const auto policies = enumerate_stationary(objs, cfg.enumeration_cap);
    const int S = objs.num_states();
    const int I = objs.size();
    std::vector<Real> tail_value(static_cast<size_t>(policies.size()) * S, kNegInf);
    std::vector<std::vector<std::vector<Real>>> per_obj(policies.size());
    std::vector<char> ok(policies.size(), 1);
    for (size_t p = 0; p < policies.size(); ++p) {
        per_obj[p].resize(I);
        try {
            for (int i = 0; i < I; ++i)
                per_obj[p][i] = evaluate_stationary(objs.objective(i).mdp, policies[p]);
        } catch (const DivergenceError&) {
            ok[p] = 0;
        }
    }

    long long nodes = 0;
    std::function<PolicyTreeNode(State, std::vector<Real>, int)> rec =
        [&](State s, std::vector<Real> gam, int depth) -> PolicyTreeNode {
        if (++nodes > cfg.node_budget)
            throw PlannerCapError("expectimax exceeded the node budget");
        PolicyTreeNode node;
        if (depth == cfg.horizon) {
            Real best = kNegInf;
            for (size_t p = 0; p < policies.size(); ++p) {
                if (!ok[p]) continue;
                Real v = 0.0;
                for (int i = 0; i < I; ++i) v += ws.weights[i] * gam[i] * per_obj[p][i][s];
                best = std::max(best, v);
            }
            if (std::isinf(best))
                throw DivergenceError("no contracting stationary tail for expectimax leaf");
            node.action = -1;
            node.value = best;
            return node;
        }
        Real best = kNegInf;
        Action best_a = -1;
        std::vector<std::pair<State, PolicyTreeNode>> best_children;
        const GeneralizedMdp& dyn = objs.dynamics();
        for (Action a = 0; a < dyn.num_actions; ++a) {
            Real value = 0.0;
            std::vector<Real> next_gam(I);
            for (int i = 0; i < I; ++i) {
                const GeneralizedMdp& m = objs.objective(i).mdp;
                value += ws.weights[i] * gam[i] * m.reward_at(s, a);
                next_gam[i] = gam[i] * m.discount_at(s, a);
            }
            std::vector<std::pair<State, PolicyTreeNode>> children;
            const auto& row = dyn.transition_at(s, a);
            for (State t = 0; t < dyn.num_states; ++t) {
                if (row[t] <= 0.0) continue;
                PolicyTreeNode child = rec(t, next_gam, depth + 1);
                value += row[t] * child.value;
                children.emplace_back(t, std::move(child));
            }
            // iterating actions in index order, ties keep the first (smallest)
            if (best_a < 0 || value > best + cfg.tie_tolerance) {
                best = value;
                best_a = a;
                best_children = std::move(children);
            }
        }
        node.action = best_a;
        node.value = best;
        node.children = std::move(best_children);
        return node;
    };
    std::vector<Real> gam(I, 1.0);
    PolicyTreeNode root = rec(start, gam, 0);
    root.value += ws.constant;
    return root;
}

// ---------------------------------------------------------------------------

TrajectorySpec detect_eventually_periodic(const std::vector<Step>& realized, int max_period) {
    const int n = static_cast<int>(realized.size());
    TrajectorySpec out;
    for (int p = 1; p <= max_period; ++p) {
        if (n < 2 * p) break;
        const int window = std::max(2 * p, std::min(2 * max_period + 4, n - 1));
        const int from = std::max(0, n - window);
        bool periodic = true;
        for (int t = from; t + p < n && periodic; ++t)
            periodic = (realized[t] == realized[t + p]);
        if (!periodic) continue;
        int k = from;
        while (k > 0 && realized[k - 1] == realized[k - 1 + p]) --k;
        out.prefix.assign(realized.begin(), realized.begin() + k);
        out.cycle.assign(realized.begin() + k, realized.begin() + k + p);
        return out;
    }
    out.prefix = realized;
    return out;
}

ReplanResult myopic_replan_simulate(const ObjectiveSet& objs, const WeightState& ws,
                                    State start, int steps, const PlanConfig& cfg,
                                    bool propagate) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    Planner planner(objs, cfg, /*consistent=*/true);
    const GeneralizedMdp& dyn = objs.dynamics();

    ReplanResult out;
    WeightState cur = ws;
    State s = start;
    for (int k = 0; k < steps; ++k) {
        const PlanResult plan = planner.plan(propagate ? cur : ws, s);
        const Action a = plan.trajectory.at(0).action;
        out.realized.push_back({s, a});
        if (propagate) {
            cur = propagate_weights(cur, s, a, objs);
            cur.step_index = k + 1;
        }
        s = dyn.successor(s, a);
    }
    out.trajectory = detect_eventually_periodic(out.realized, cfg.max_cycle_period);
    out.realized_value = aggregate_trajectory_value(objs, ws, out.trajectory);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Real> stationary_distribution(const ObjectiveSet& objs, const PolicySpec& policy) {
    const GeneralizedMdp& dyn = objs.dynamics();
    const int n = dyn.num_states;

    // chain under the policy
    std::vector<std::vector<Real>> P(n, std::vector<Real>(n, 0.0));
    for (State s = 0; s < n; ++s) {
        const auto dist = policy.action_distribution(dyn, s);
        for (Action a = 0; a < dyn.num_actions; ++a) {
            if (dist[a] == 0.0) continue;
            const auto& row = dyn.transition_at(s, a);
            for (State t = 0; t < n; ++t) P[s][t] += dist[a] * row[t];
        }
    }

    // irreducibility: strong connectivity of the positive-probability graph
    auto reach = [&](bool reversed) {
        std::vector<char> seen(n, 0);
        std::vector<State> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const State u = stack.back();
            stack.pop_back();
            for (State v = 0; v < n; ++v) {
                const Real p = reversed ? P[v][u] : P[u][v];
                if (p > 0.0 && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(false);
    const auto bwd = reach(true);
    for (State s = 0; s < n; ++s)
        if (!fwd[s] || !bwd[s])
            throw DivergenceError(
                "induced chain is not irreducible: stationary distribution is not unique");

    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (State i = 0; i < n; ++i)
        for (State j = 0; j < n; ++j)
            A(i, j) = P[j][i] - (i == j ? 1.0 : 0.0); // (P^T - I) d = 0
    // replace the last balance equation with normalization
    for (State j = 0; j < n; ++j) A(n - 1, j) = 1.0;
    b(n - 1) = 1.0;
    Eigen::VectorXd d = A.partialPivLu().solve(b);
    if (!d.allFinite() || (A * d - b).norm() > 1e-9)
        throw DivergenceError("stationary distribution solve failed");
    return std::vector<Real>(d.data(), d.data() + n);
}

Real avg_objective(const ObjectiveSet& objs, const WeightState& ws, const PolicySpec& policy) {
    const auto d = stationary_distribution(objs, policy);
    std::vector<std::vector<Real>> values;
    values.reserve(objs.size());
    for (const Objective& o : objs.objectives())
        values.push_back(evaluate_stationary(o.mdp, policy));
    Real j = 0.0;
    for (State s = 0; s < objs.num_states(); ++s) {
        Real vs = ws.constant;
        for (int i = 0; i < objs.size(); ++i) vs += ws.weights[i] * values[i][s];
        j += d[s] * vs;
    }
    return j;
}

} // namespace timepref
