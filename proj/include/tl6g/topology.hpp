// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tl6g/rush_profile.hpp"

namespace tl6g {

/// Network level a node belongs to.
enum class Tier { EndUser, RadioAccess, Core, OttService, Management };

std::string_view to_string(Tier tier) noexcept;
std::optional<Tier> tier_from_string(std::string_view s) noexcept;

struct Node {
    std::string id;
    Tier tier = Tier::RadioAccess;
    std::string zone;
};

/// Undirected link with symmetric properties.
struct Link {
    std::string id;
    std::string a;
    std::string b;
    double bandwidth = 0.0;  ///< bits/s, > 0
    double delay = 0.0;      ///< seconds, >= 0
    std::optional<RushProfile> load_profile;  ///< utilization in [0,1]; unloaded when absent

    [[nodiscard]] const std::string& other_end(const std::string& from) const {
        return from == a ? b : a;
    }
};

struct Path {
    std::vector<std::string> nodes;
    std::vector<std::string> links;
    double e2e_bandwidth = 0.0;  ///< +inf for the empty (same-node) path
    double e2e_delay = 0.0;
};

/// Immutable network graph. Validates on construction.
class Topology {
public:
    Topology() = default;
    /// Throws InvalidParams on duplicate ids or bad link properties and
    /// UnknownNode when a link endpoint is not declared.
    Topology(std::vector<Node> nodes, std::vector<Link> links);

    [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<Link>& links() const noexcept { return links_; }
    [[nodiscard]] bool has_node(const std::string& id) const { return node_index_.contains(id); }
    [[nodiscard]] const Node& node(const std::string& id) const;
    [[nodiscard]] const Link& link(const std::string& id) const;

    /// Minimum total delay path. Ties are broken by the lexicographically
    /// smallest link-id sequence.
    [[nodiscard]] Path path_between(const std::string& a, const std::string& b) const;

    /// Combined load over a path (pointwise max of link profiles). Flat zero
    /// when no link on the path carries a profile.
    [[nodiscard]] RushProfile path_load(const Path& path) const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::map<std::string, std::size_t> node_index_;
    std::map<std::string, std::size_t> link_index_;
    std::map<std::string, std::vector<std::size_t>> adjacency_;
};

enum class InteractionModel { Cascade, Hierarchical, Parallel };

std::string_view to_string(InteractionModel model) noexcept;
std::optional<InteractionModel> interaction_model_from_string(std::string_view s) noexcept;

using AgentPair = std::pair<std::string, std::string>;
using ParentMap = std::map<std::string, std::string>;

struct PairOptions {
    /// Cascade emits only forward (earlier -> later) pairs when set.
    bool directed_cascade = false;
    /// Tier lookup for Parallel grouping; all agents share one tier when unset.
    std::function<Tier(const std::string&)> tier_of;
};

/// Source-target pairs for one interaction model.
///
/// Cascade pairs consecutive agents, Hierarchical pairs each child with its
/// parent, Parallel pairs every two agents on the same tier. Pairs are emitted
/// in both directions and never include a self-pair.
std::vector<AgentPair> generate_pairs(InteractionModel model,
                                      const std::vector<std::string>& agents,
                                      const std::optional<ParentMap>& hierarchy = std::nullopt,
                                      const PairOptions& options = {});

} // namespace tl6g
