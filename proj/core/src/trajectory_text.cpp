#include "timepref/trajectory_text.hpp"

#include <algorithm>
#include <sstream>

namespace timepref {

namespace {

constexpr long kMaxExpandedSteps = 1'000'000;

struct Atom {
    Action action;
    long count;
};

// NAME[count] with longest-match action names, so names ending in digits
// stay unambiguous when possible
Atom parse_atom(const std::string& token, const std::vector<std::string>& names) {
    int best = -1;
    size_t best_len = 0;
    for (size_t i = 0; i < names.size(); ++i) {
        const std::string& name = names[i];
        if (token.compare(0, name.size(), name) == 0 && name.size() >= best_len &&
            name.size() <= token.size()) {
            const std::string rest = token.substr(name.size());
            if (rest.empty() || std::all_of(rest.begin(), rest.end(), ::isdigit)) {
                best = static_cast<int>(i);
                best_len = name.size();
            }
        }
    }
    if (best < 0)
        throw TrajectoryTextError("unknown trajectory token '" + token + "'");
    const std::string rest = token.substr(best_len);
    long count = 1;
    if (!rest.empty()) {
        try {
            count = std::stol(rest);
        } catch (const std::exception&) {
            throw TrajectoryTextError("bad repeat count in '" + token + "'");
        }
        if (count < 1)
            throw TrajectoryTextError("repeat count must be >= 1 in '" + token + "'");
        if (count > kMaxExpandedSteps)
            throw TrajectoryTextError("repeat count too large in '" + token + "'");
    }
    return {static_cast<Action>(best), count};
}

std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw TrajectoryTextError("unbalanced ')' in trajectory");
        if (ch == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (depth != 0) throw TrajectoryTextError("unbalanced '(' in trajectory");
    items.push_back(cur);
    return items;
}

} // namespace

ActionPattern parse_action_pattern(const std::string& text,
                                   const std::vector<std::string>& action_names) {
    ActionPattern out;
    const auto items = split_top_level(text);
    bool saw_star = false;
    for (size_t idx = 0; idx < items.size(); ++idx) {
        std::string item = items[idx];
        if (item.empty()) throw TrajectoryTextError("empty trajectory item");
        if (saw_star)
            throw TrajectoryTextError("'*' must terminate the trajectory");

        bool star = false;
        if (item.back() == '*') {
            star = true;
            item.pop_back();
            if (item.empty()) throw TrajectoryTextError("dangling '*'");
        }

        std::vector<Action> expanded;
        if (item.front() == '(') {
            const size_t close = item.rfind(')');
            if (close == std::string::npos)
                throw TrajectoryTextError("unbalanced '(' in '" + item + "'");
            const std::string body = item.substr(1, close - 1);
            const std::string suffix = item.substr(close + 1);
            long group_count = 1;
            if (!suffix.empty()) {
                if (!std::all_of(suffix.begin(), suffix.end(), ::isdigit))
                    throw TrajectoryTextError("bad group suffix in '" + item + "'");
                try {
                    group_count = std::stol(suffix);
                } catch (const std::exception&) {
                    throw TrajectoryTextError("bad repeat count in '" + item + "'");
                }
                if (group_count < 1)
                    throw TrajectoryTextError("repeat count must be >= 1 in '" + item + "'");
                if (group_count > kMaxExpandedSteps)
                    throw TrajectoryTextError("repeat count too large in '" + item + "'");
            }
            std::vector<Action> body_actions;
            for (const std::string& tok : split_top_level(body)) {
                if (tok.empty()) throw TrajectoryTextError("empty token in group");
                const Atom atom = parse_atom(tok, action_names);
                body_actions.insert(body_actions.end(), atom.count, atom.action);
            }
            if (star && group_count != 1)
                throw TrajectoryTextError("a repeated group cannot also carry '*'");
            for (long k = 0; k < group_count; ++k)
                expanded.insert(expanded.end(), body_actions.begin(), body_actions.end());
        } else {
            const Atom atom = parse_atom(item, action_names);
            expanded.assign(static_cast<size_t>(atom.count), atom.action);
        }

        if (star) {
            out.cycle = std::move(expanded);
            saw_star = true;
        } else {
            out.prefix.insert(out.prefix.end(), expanded.begin(), expanded.end());
        }
        if (out.prefix.size() + out.cycle.size() > kMaxExpandedSteps)
            throw TrajectoryTextError("trajectory expands past the step limit");
    }
    if (out.prefix.empty() && out.cycle.empty())
        throw TrajectoryTextError("trajectory is empty");
    return out;
}

TrajectorySpec realize_action_pattern(const GeneralizedMdp& dynamics, State start,
                                      const ActionPattern& pattern) {
    if (!dynamics.deterministic())
        throw TrajectoryTextError(
            "action patterns need deterministic dynamics to determine states");
    TrajectorySpec out;
    State s = start;
    for (Action a : pattern.prefix) {
        if (a < 0 || a >= dynamics.num_actions)
            throw TrajectoryTextError("action index out of range");
        out.prefix.push_back({s, a});
        s = dynamics.successor(s, a);
    }
    if (pattern.cycle.empty()) return out;

    const size_t L = pattern.cycle.size();
    std::vector<int> seen(static_cast<size_t>(dynamics.num_states) * L, -1);
    std::vector<Step> walk;
    size_t pos = 0;
    while (true) {
        const size_t key = static_cast<size_t>(s) * L + pos;
        if (seen[key] >= 0) {
            const long split = seen[key];
            out.prefix.insert(out.prefix.end(), walk.begin(), walk.begin() + split);
            out.cycle.assign(walk.begin() + split, walk.end());
            return out;
        }
        seen[key] = static_cast<int>(walk.size());
        const Action a = pattern.cycle[pos];
        if (a < 0 || a >= dynamics.num_actions)
            throw TrajectoryTextError("action index out of range");
        walk.push_back({s, a});
        s = dynamics.successor(s, a);
        pos = (pos + 1) % L;
    }
}

namespace {

void append_rle(std::ostringstream& oss, const std::vector<Step>& steps,
                const std::vector<std::string>& names, bool& first) {
    size_t i = 0;
    while (i < steps.size()) {
        size_t j = i;
        while (j < steps.size() && steps[j].action == steps[i].action) ++j;
        if (!first) oss << ",";
        first = false;
        oss << names.at(steps[i].action);
        if (j - i > 1) oss << (j - i);
        i = j;
    }
}

} // namespace

std::string format_action_pattern(const TrajectorySpec& traj,
                                  const std::vector<std::string>& action_names) {
    std::vector<Step> prefix = traj.prefix;
    if (traj.cycle.size() == 1) {
        // action-wise, a run of the cycle action before the cycle is the cycle
        while (!prefix.empty() && prefix.back().action == traj.cycle[0].action)
            prefix.pop_back();
    }
    std::ostringstream oss;
    bool first = true;
    append_rle(oss, prefix, action_names, first);
    if (!traj.cycle.empty()) {
        if (!first) oss << ",";
        if (traj.cycle.size() == 1) {
            oss << action_names.at(traj.cycle[0].action) << "*";
        } else {
            oss << "(";
            bool inner_first = true;
            append_rle(oss, traj.cycle, action_names, inner_first);
            oss << ")*";
        }
    }
    return oss.str();
}

} // namespace timepref
