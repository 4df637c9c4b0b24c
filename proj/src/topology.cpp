// SPDX-License-Identifier: Apache-2.0
#include "tl6g/topology.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(Tier tier) noexcept {
    switch (tier) {
    case Tier::EndUser: return "EndUser";
    case Tier::RadioAccess: return "RadioAccess";
    case Tier::Core: return "Core";
    case Tier::OttService: return "OttService";
    case Tier::Management: return "Management";
    }
    return "?";
}

std::optional<Tier> tier_from_string(std::string_view s) noexcept {
    for (Tier t : {Tier::EndUser, Tier::RadioAccess, Tier::Core, Tier::OttService,
                   Tier::Management}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::string_view to_string(InteractionModel model) noexcept {
    switch (model) {
    case InteractionModel::Cascade: return "Cascade";
    case InteractionModel::Hierarchical: return "Hierarchical";
    case InteractionModel::Parallel: return "Parallel";
    }
    return "?";
}

std::optional<InteractionModel> interaction_model_from_string(std::string_view s) noexcept {
    for (auto m : {InteractionModel::Cascade, InteractionModel::Hierarchical,
                   InteractionModel::Parallel}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!node_index_.emplace(nodes_[i].id, i).second) {
            throw Error(ErrorCode::InvalidParams, "duplicate node id '" + nodes_[i].id + "'");
        }
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& l = links_[i];
        if (!link_index_.emplace(l.id, i).second) {
            throw Error(ErrorCode::InvalidParams, "duplicate link id '" + l.id + "'");
        }
        if (!node_index_.contains(l.a) || !node_index_.contains(l.b)) {
            throw Error(ErrorCode::UnknownNode, "link '" + l.id + "' references an undeclared node");
        }
        if (!(l.bandwidth > 0.0) || !std::isfinite(l.bandwidth)) {
            throw Error(ErrorCode::InvalidParams, "link '" + l.id + "' bandwidth must be > 0");
        }
        if (!(l.delay >= 0.0) || !std::isfinite(l.delay)) {
            throw Error(ErrorCode::InvalidParams, "link '" + l.id + "' delay must be >= 0");
        }
        if (l.load_profile &&
            (l.load_profile->min_value() < 0.0 || l.load_profile->max_value() > 1.0)) {
            throw Error(ErrorCode::InvalidParams,
                        "link '" + l.id + "' load profile must stay in [0,1]");
        }
        adjacency_[l.a].push_back(i);
        if (l.b != l.a) adjacency_[l.b].push_back(i);
    }
}

const Node& Topology::node(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) throw Error(ErrorCode::UnknownNode, "node '" + id + "'");
    return nodes_[it->second];
}

const Link& Topology::link(const std::string& id) const {
    auto it = link_index_.find(id);
    if (it == link_index_.end()) throw Error(ErrorCode::InvalidParams, "link '" + id + "'");
    return links_[it->second];
}

namespace {

struct Label {
    double delay = std::numeric_limits<double>::infinity();
    std::vector<std::string> links;
    std::vector<std::string> nodes;
    double bandwidth = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool better_than(const Label& o) const {
        if (delay != o.delay) return delay < o.delay;
        return links < o.links;
    }
};

} // namespace

Path Topology::path_between(const std::string& a, const std::string& b) const {
    if (!has_node(a)) throw Error(ErrorCode::UnknownNode, "node '" + a + "'");
    if (!has_node(b)) throw Error(ErrorCode::UnknownNode, "node '" + b + "'");

    std::map<std::string, Label> best;
    std::set<std::string> settled;
    best[a] = Label{0.0, {}, {a}, std::numeric_limits<double>::infinity()};

    // Small graphs: a linear scan for the next label keeps the composite
    // (delay, link sequence) ordering exact.
    while (true) {
        const std::string* next = nullptr;
        for (const auto& [id, label] : best) {
            if (settled.contains(id)) continue;
            if (next == nullptr || label.better_than(best.at(*next))) next = &id;
        }
        if (next == nullptr) break;
        const std::string current = *next;
        settled.insert(current);
        if (current == b) break;
        const Label here = best.at(current);
        auto adj = adjacency_.find(current);
        if (adj == adjacency_.end()) continue;
        for (std::size_t li : adj->second) {
            const Link& l = links_[li];
            const std::string& to = l.other_end(current);
            if (settled.contains(to)) continue;
            Label cand;
            cand.delay = here.delay + l.delay;
            cand.links = here.links;
            cand.links.push_back(l.id);
            cand.nodes = here.nodes;
            cand.nodes.push_back(to);
            cand.bandwidth = std::min(here.bandwidth, l.bandwidth);
            auto it = best.find(to);
            if (it == best.end() || cand.better_than(it->second)) best[to] = std::move(cand);
        }
    }

    auto it = best.find(b);
    if (it == best.end()) throw Error(ErrorCode::NoPath, "no path between '" + a + "' and '" + b + "'");
    const Label& l = it->second;
    return Path{l.nodes, l.links, l.bandwidth, l.delay};
}

RushProfile Topology::path_load(const Path& path) const {
    RushProfile combined;
    for (const auto& id : path.links) {
        const Link& l = link(id);
        if (l.load_profile) combined = RushProfile::pointwise_max(combined, *l.load_profile);
    }
    return combined;
}

std::vector<AgentPair> generate_pairs(InteractionModel model,
                                      const std::vector<std::string>& agents,
                                      const std::optional<ParentMap>& hierarchy,
                                      const PairOptions& options) {
    if (agents.empty()) throw Error(ErrorCode::EmptyAgentList, "interaction model has no agents");
    std::vector<AgentPair> pairs;
    auto emit_both = [&](const std::string& x, const std::string& y, bool both) {
        if (x == y) return;
        pairs.emplace_back(x, y);
        if (both) pairs.emplace_back(y, x);
    };

    switch (model) {
    case InteractionModel::Cascade:
        for (std::size_t i = 0; i + 1 < agents.size(); ++i) {
            emit_both(agents[i], agents[i + 1], !options.directed_cascade);
        }
        break;
    case InteractionModel::Hierarchical:
        if (!hierarchy) {
            throw Error(ErrorCode::MissingHierarchy, "hierarchical model requires a parent map");
        }
        for (const auto& child : agents) {
            auto it = hierarchy->find(child);
            if (it != hierarchy->end()) emit_both(child, it->second, true);
        }
        break;
    case InteractionModel::Parallel:
        for (std::size_t i = 0; i < agents.size(); ++i) {
            for (std::size_t j = i + 1; j < agents.size(); ++j) {
                if (options.tier_of && options.tier_of(agents[i]) != options.tier_of(agents[j])) {
                    continue;
                }
                emit_both(agents[i], agents[j], true);
            }
        }
        break;
    }
    return pairs;
}

} // namespace tl6g
