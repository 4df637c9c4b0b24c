// SPDX-License-Identifier: Apache-2.0
// Scenario document loading. Structural problems (missing fields, wrong types,
// unknown enum names, bad topology records) are collected here; semantic
// invariants are left to validate_scenario().

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tl6g/cli.hpp"

namespace tl6g {

namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::vector<ValidationIssue>& issues) : issues_(issues) {}

    void issue(const std::string& path, const std::string& message) {
        issues_.push_back({path, message});
    }

    const json* field(const json& obj, const std::string& key, const std::string& path,
                      bool required) {
        if (!obj.is_object()) {
            issue(path, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            if (required) issue(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    double number(const json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback.has_value());
        if (v == nullptr) return fallback.value_or(0.0);
        if (!v->is_number()) {
            issue(join(path, key), "expected a number");
            return fallback.value_or(0.0);
        }
        return v->get<double>();
    }

    std::uint64_t count(const json& obj, const std::string& key, const std::string& path,
                        std::optional<std::uint64_t> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback.has_value());
        if (v == nullptr) return fallback.value_or(0);
        if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
            issue(join(path, key), "expected a non-negative integer");
            return fallback.value_or(0);
        }
        return v->get<std::uint64_t>();
    }

    int integer(const json& obj, const std::string& key, const std::string& path, int fallback) {
        const json* v = field(obj, key, path, false);
        if (v == nullptr) return fallback;
        if (!v->is_number_integer()) {
            issue(join(path, key), "expected an integer");
            return fallback;
        }
        return v->get<int>();
    }

    bool boolean(const json& obj, const std::string& key, const std::string& path, bool fallback) {
        const json* v = field(obj, key, path, false);
        if (v == nullptr) return fallback;
        if (!v->is_boolean()) {
            issue(join(path, key), "expected true or false");
            return fallback;
        }
        return v->get<bool>();
    }

    std::string string(const json& obj, const std::string& key, const std::string& path,
                       std::optional<std::string> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback.has_value());
        if (v == nullptr) return fallback.value_or("");
        if (!v->is_string()) {
            issue(join(path, key), "expected a string");
            return fallback.value_or("");
        }
        return v->get<std::string>();
    }

    std::vector<std::string> strings(const json& obj, const std::string& key,
                                     const std::string& path) {
        std::vector<std::string> out;
        const json* v = field(obj, key, path, false);
        if (v == nullptr) return out;
        if (!v->is_array()) {
            issue(join(path, key), "expected a list of strings");
            return out;
        }
        for (const auto& item : *v) {
            if (!item.is_string()) {
                issue(join(path, key), "expected a list of strings");
                return {};
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    std::vector<double> numbers(const json& v, const std::string& path) {
        std::vector<double> out;
        if (!v.is_array()) {
            issue(path, "expected a list of numbers");
            return out;
        }
        for (const auto& item : v) {
            if (!item.is_number()) {
                issue(path, "expected a list of numbers");
                return {};
            }
            out.push_back(item.get<double>());
        }
        return out;
    }

    template <typename Enum, typename Parse>
    std::optional<Enum> enumeration(const json& obj, const std::string& key,
                                    const std::string& path, Parse parse, bool required) {
        const json* v = field(obj, key, path, required);
        if (v == nullptr) return std::nullopt;
        if (!v->is_string()) {
            issue(join(path, key), "expected a string");
            return std::nullopt;
        }
        auto parsed = parse(v->get<std::string>());
        if (!parsed) issue(join(path, key), "unknown value '" + v->get<std::string>() + "'");
        return parsed;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::vector<ValidationIssue>& issues_;
};

std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

std::optional<RushProfile> read_profile(Reader& r, const json& v, const std::string& path) {
    auto values = r.numbers(v, path);
    if (values.size() != 24) {
        r.issue(path, "load profile needs 24 hourly values");
        return std::nullopt;
    }
    std::array<double, 24> slots{};
    for (std::size_t h = 0; h < 24; ++h) {
        if (!(values[h] >= 0.0 && values[h] <= 1.0)) {
            r.issue(path, "load profile values must lie in [0,1]");
            return std::nullopt;
        }
        slots[h] = values[h];
    }
    return RushProfile::hourly(slots);
}

Topology read_topology(Reader& r, const json& doc) {
    const json* topo = r.field(doc, "topology", "", true);
    if (topo == nullptr) return {};
    std::vector<Node> nodes;
    std::set<std::string> node_ids;
    if (const json* list = r.field(*topo, "nodes", "topology", true); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = index_path("topology.nodes", i);
            const json& item = (*list)[i];
            Node n;
            n.id = r.string(item, "id", path);
            auto tier = r.enumeration<Tier>(item, "tier", path, tier_from_string, true);
            n.zone = r.string(item, "zone", path, "");
            if (!tier || n.id.empty()) continue;
            n.tier = *tier;
            if (!node_ids.insert(n.id).second) {
                r.issue(path + ".id", "duplicate node id '" + n.id + "'");
                continue;
            }
            nodes.push_back(std::move(n));
        }
    }
    std::vector<Link> links;
    std::set<std::string> link_ids;
    if (const json* list = r.field(*topo, "links", "topology", false); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = index_path("topology.links", i);
            const json& item = (*list)[i];
            Link l;
            l.id = r.string(item, "id", path);
            auto ends = r.strings(item, "endpoints", path);
            l.bandwidth = r.number(item, "bandwidth", path);
            l.delay = r.number(item, "delay", path);
            bool ok = !l.id.empty();
            if (ends.size() != 2) {
                r.issue(path + ".endpoints", "expected two node ids");
                ok = false;
            } else {
                l.a = ends[0];
                l.b = ends[1];
                for (const auto& e : ends) {
                    if (!node_ids.contains(e)) {
                        r.issue(path + ".endpoints", "unknown node '" + e + "'");
                        ok = false;
                    }
                }
            }
            if (!(l.bandwidth > 0.0) || !std::isfinite(l.bandwidth)) {
                r.issue(path + ".bandwidth", "must be > 0");
                ok = false;
            }
            if (!(l.delay >= 0.0) || !std::isfinite(l.delay)) {
                r.issue(path + ".delay", "must be >= 0");
                ok = false;
            }
            if (const json* profile = r.field(item, "load_profile", path, false)) {
                l.load_profile = read_profile(r, *profile, path + ".load_profile");
                if (!l.load_profile) ok = false;
            }
            if (ok && !link_ids.insert(l.id).second) {
                r.issue(path + ".id", "duplicate link id '" + l.id + "'");
                ok = false;
            }
            if (ok) links.push_back(std::move(l));
        }
    }
    return Topology(std::move(nodes), std::move(links));
}

LearningAgent read_agent(Reader& r, const json& item, const std::string& path) {
    LearningAgent a;
    a.id = r.string(item, "id", path);
    a.node = r.string(item, "node", path);
    a.purpose = r.string(item, "purpose", path, "");
    a.baseline_performance = r.number(item, "baseline_performance", path);
    a.baseline_training_time = r.number(item, "baseline_training_time", path);
    if (const json* d = r.field(item, "domain", path, true)) {
        const std::string dp = path + ".domain";
        a.domain.feature_space_id = r.string(*d, "feature_space", dp);
        if (const json* sig = r.field(*d, "signature", dp, true)) {
            a.domain.distribution_signature = r.numbers(*sig, dp + ".signature");
        }
        a.domain.sample_count = r.count(*d, "sample_count", dp);
        a.domain.has_labels = r.boolean(*d, "has_labels", dp, false);
        a.domain.bits_per_sample = r.count(*d, "bits_per_sample", dp, 1);
    }
    if (const json* t = r.field(item, "task", path, false)) {
        const std::string tp = path + ".task";
        a.task.label_space_id = r.string(*t, "label_space", tp, "");
        a.task.function_signature = r.string(*t, "function", tp, "");
        a.task.parameter_count = r.count(*t, "parameter_count", tp, 0);
        if (const json* hp = r.field(*t, "hyperparams", tp, false); hp && hp->is_object()) {
            for (const auto& [k, v] : hp->items()) {
                if (v.is_number()) {
                    a.task.hyperparams[k] = v.get<double>();
                } else {
                    r.issue(tp + ".hyperparams." + k, "expected a number");
                }
            }
        }
    }
    return a;
}

std::optional<std::pair<KnowledgeKind, double>> read_share(Reader& r, const std::string& name,
                                                           const json& v, const std::string& path) {
    auto kind = knowledge_kind_from_string(name);
    if (!kind) {
        r.issue(path, "unknown knowledge kind '" + name + "'");
        return std::nullopt;
    }
    if (!v.is_number()) {
        r.issue(path + "." + name, "expected a share fraction");
        return std::nullopt;
    }
    return std::make_pair(*kind, v.get<double>());
}

SlaPolicy read_sla(Reader& r, const json& item, const std::string& path) {
    SlaPolicy s;
    s.agent = r.string(item, "agent", path);
    for (auto& a : r.strings(item, "trusted_sources", path)) s.trusted_sources.insert(a);
    for (auto& a : r.strings(item, "trusted_targets", path)) s.trusted_targets.insert(a);
    if (const json* kinds = r.field(item, "shareable_kinds", path, false)) {
        const std::string kp = path + ".shareable_kinds";
        if (kinds->is_array()) {
            for (const auto& k : *kinds) {
                if (!k.is_string()) {
                    r.issue(kp, "expected kind names");
                    continue;
                }
                if (auto share = read_share(r, k.get<std::string>(), json(1.0), kp)) {
                    s.shareable_kinds.insert(*share);
                }
            }
        } else if (kinds->is_object()) {
            for (const auto& [name, v] : kinds->items()) {
                if (auto share = read_share(r, name, v, kp)) s.shareable_kinds.insert(*share);
            }
        } else {
            r.issue(kp, "expected a list of kinds or a kind -> fraction map");
        }
    }
    s.security_level = r.integer(item, "security_level", path, 0);
    if (auto c = r.enumeration<InteractionClass>(item, "default_class", path,
                                                 interaction_class_from_string, false)) {
        s.default_class = *c;
    }
    if (const json* g = r.field(item, "granularity", path, false); g && g->is_object()) {
        for (const auto& [agent, v] : g->items()) {
            auto c = v.is_string() ? interaction_class_from_string(v.get<std::string>())
                                   : std::nullopt;
            if (!c) {
                r.issue(path + ".granularity." + agent, "expected an interaction class");
                continue;
            }
            s.granularity[agent] = *c;
        }
    }
    s.max_e2e_delay = r.number(item, "max_e2e_delay", path);
    s.required_bandwidth = r.number(item, "required_bandwidth", path);
    return s;
}

PipelineTemplate read_template(Reader& r, const json& item, const std::string& path) {
    PipelineTemplate t;
    if (auto k = r.enumeration<KnowledgeKind>(item, "kind", path, knowledge_kind_from_string, false)) {
        t.kind = *k;
    }
    t.cls = r.enumeration<InteractionClass>(item, "class", path, interaction_class_from_string, false);
    if (auto i = r.enumeration<Initiator>(item, "initiator", path, initiator_from_string, false)) {
        t.initiator = *i;
    }
    if (auto q = r.enumeration<QuantScheme>(item, "scheme", path, quant_scheme_from_string, false)) {
        t.scheme = *q;
    }
    t.content_tag = r.string(item, "content_tag", path, "");
    if (const json* sched = r.field(item, "schedule", path, false)) {
        const std::string sp = path + ".schedule";
        if (!sched->is_array()) {
            r.issue(sp, "expected a list of [start, end] windows");
        } else {
            for (const auto& w : *sched) {
                auto bounds = r.numbers(w, sp);
                if (bounds.size() != 2) {
                    r.issue(sp, "each window is [start, end]");
                    continue;
                }
                t.schedule.push_back({bounds[0], bounds[1]});
            }
        }
    }
    return t;
}

void read_overhead(Reader& r, const json& doc, OverheadParams& o) {
    const json* v = r.field(doc, "overhead", "", true);
    if (v == nullptr) return;
    if (const json* a = r.field(*v, "alpha", "overhead", true)) {
        auto values = r.numbers(*a, "overhead.alpha");
        if (values.size() == 4) {
            std::copy(values.begin(), values.end(), o.alpha.begin());
        } else {
            r.issue("overhead.alpha", "expected four weights");
        }
    }
    if (const json* m = r.field(*v, "m_costs", "overhead", true)) {
        auto values = r.numbers(*m, "overhead.m_costs");
        if (values.size() == 3) {
            std::copy(values.begin(), values.end(), o.m_costs.begin());
        } else {
            r.issue("overhead.m_costs", "expected three class costs");
        }
    }
    if (const json* f1 = r.field(*v, "f1", "overhead", false)) {
        const std::string form = r.string(*f1, "form", "overhead.f1", "linear");
        if (form == "linear") {
            o.f1.form = BandwidthCostSpec::Form::Linear;
        } else if (form == "affine") {
            o.f1.form = BandwidthCostSpec::Form::Affine;
        } else if (form == "log") {
            o.f1.form = BandwidthCostSpec::Form::Log;
        } else {
            r.issue("overhead.f1.form", "unknown form '" + form + "'");
        }
        o.f1.reference = r.number(*f1, "reference", "overhead.f1", 1e6);
        o.f1.offset = r.number(*f1, "offset", "overhead.f1", 0.0);
    }
    if (const json* f2 = r.field(*v, "f2", "overhead", false)) {
        const std::string form = r.string(*f2, "form", "overhead.f2", "reciprocal");
        if (form == "reciprocal") {
            o.f2.form = DelayCostSpec::Form::Reciprocal;
        } else if (form == "negative_exponential") {
            o.f2.form = DelayCostSpec::Form::NegativeExponential;
        } else {
            r.issue("overhead.f2.form", "unknown form '" + form + "'");
        }
        o.f2.reference = r.number(*f2, "reference", "overhead.f2", 1.0);
    }
    if (const json* h = r.field(*v, "h", "overhead", false)) {
        o.h.coefficient = r.number(*h, "coefficient", "overhead.h", 1.0);
    }
}

std::optional<QuantizationConfig> read_quantization(Reader& r, const json& doc) {
    const json* q = r.field(doc, "quantization", "", false);
    if (q == nullptr) return std::nullopt;
    const std::string p = "quantization";
    const double base = r.number(*q, "base_accuracy", p);
    const double fbgemm = r.number(*q, "fbgemm_delta", p);
    const double deflt = r.number(*q, "default_delta", p);
    QuantizationConfig out;
    out.retune.retrain_time = r.number(*q, "retrain_time", p);
    out.retune.full_train_time = r.number(*q, "full_train_time", p);
    out.retune.restores_accuracy = r.boolean(*q, "restores_accuracy", p, true);
    if (r.field(*q, "parameter_count", p, false) != nullptr) {
        out.parameter_count = r.count(*q, "parameter_count", p);
    }
    bool ok = true;
    if (!(base >= 0.0 && base <= 100.0)) {
        r.issue(p + ".base_accuracy", "must lie in [0,100]");
        ok = false;
    }
    if (!(fbgemm + kQatGainOverFbgemm <= 0.0)) {
        r.issue(p + ".fbgemm_delta",
                "must be <= -1 so that Float32 >= Qat8 = Fbgemm8 + 1 point");
        ok = false;
    }
    if (!(deflt <= fbgemm)) {
        r.issue(p + ".default_delta", "must not exceed fbgemm_delta (Fbgemm8 >= Default8)");
        ok = false;
    } else if (!(base + deflt >= 0.0)) {
        r.issue(p + ".default_delta", "Default8 accuracy must stay >= 0");
        ok = false;
    }
    if (!ok) return std::nullopt;
    out.accuracy = AccuracyModel(base, fbgemm, deflt);
    return out;
}

TraceEvent read_event(Reader& r, const json& item, const std::string& path) {
    TraceEvent e;
    e.time = r.number(item, "time", path);
    const std::string kind = r.string(item, "kind", path);
    if (kind == "KnowledgeUpdate") {
        e.kind = EventKind::KnowledgeUpdate;
    } else if (kind == "DemandRequest") {
        e.kind = EventKind::DemandRequest;
    } else if (kind == "ResourceAction") {
        e.kind = EventKind::ResourceAction;
        e.node = r.string(item, "node", path);
        e.resource = r.string(item, "resource", path);
        e.delta = r.number(item, "delta", path);
    } else if (!kind.empty()) {
        r.issue(path + ".kind", "unknown event kind '" + kind + "'");
    }
    e.agent = r.string(item, "agent", path);
    if (r.field(item, "source", path, false) != nullptr) e.source = r.string(item, "source", path);
    return e;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

LoadResult parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte);
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + " column " +
                                               std::to_string(column) + ": " + e.what());
    }

    LoadResult result;
    Reader r(result.issues);
    Scenario& s = result.scenario;
    if (!doc.is_object()) {
        r.issue("", "scenario must be a JSON object");
        return result;
    }

    s.name = r.string(doc, "name", "", "scenario");
    s.horizon = r.number(doc, "horizon", "");
    s.seed = r.count(doc, "seed", "", 0);
    s.topology = read_topology(r, doc);

    if (const json* list = r.field(doc, "agents", "", true); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            auto agent = read_agent(r, (*list)[i], index_path("agents", i));
            if (agent.id.empty()) continue;
            if (s.agents.contains(agent.id)) {
                r.issue(index_path("agents", i) + ".id", "duplicate agent id '" + agent.id + "'");
                continue;
            }
            s.agents.emplace(agent.id, std::move(agent));
        }
    }
    if (const json* list = r.field(doc, "slas", "", true); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            auto sla = read_sla(r, (*list)[i], index_path("slas", i));
            if (sla.agent.empty()) continue;
            if (s.slas.contains(sla.agent)) {
                r.issue(index_path("slas", i) + ".agent", "duplicate SLA for '" + sla.agent + "'");
                continue;
            }
            s.slas.emplace(sla.agent, std::move(sla));
        }
    }
    if (const json* list = r.field(doc, "pipelines", "", false); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = index_path("pipelines", i);
            PipelineConfig p;
            p.source = r.string((*list)[i], "source", path);
            p.target = r.string((*list)[i], "target", path);
            p.spec = read_template(r, (*list)[i], path);
            p.origin = path;
            s.pipelines.push_back(std::move(p));
        }
    }
    if (const json* models = r.field(doc, "interaction_model", "", false)) {
        json list = models->is_array() ? *models : json::array({*models});
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = index_path("interaction_model", i);
            const json& item = list[i];
            InteractionModelConfig m;
            if (auto kind = r.enumeration<InteractionModel>(item, "kind", path,
                                                            interaction_model_from_string, true)) {
                m.model = *kind;
            }
            m.agents = r.strings(item, "agents", path);
            m.directed_cascade = r.boolean(item, "directed_cascade", path, false);
            if (const json* h = r.field(item, "hierarchy", path, false)) {
                ParentMap parents;
                if (h->is_object()) {
                    for (const auto& [child, parent] : h->items()) {
                        if (parent.is_string()) {
                            parents[child] = parent.get<std::string>();
                        } else {
                            r.issue(path + ".hierarchy." + child, "expected a parent id");
                        }
                    }
                } else {
                    r.issue(path + ".hierarchy", "expected a child -> parent map");
                }
                m.hierarchy = std::move(parents);
            }
            if (const json* d = r.field(item, "defaults", path, false)) {
                m.defaults = read_template(r, *d, path + ".defaults");
            }
            s.interaction_models.push_back(std::move(m));
        }
    }

    read_overhead(r, doc, s.overhead);
    s.quantization = read_quantization(r, doc);

    if (const json* mode = r.field(doc, "mode", "", false)) {
        const std::string base = r.string(*mode, "initiation", "mode", "decentralized");
        if (base == "centralized") {
            s.initiation.base = InitiationMode::Base::Centralized;
        } else if (base == "decentralized") {
            s.initiation.base = InitiationMode::Base::Decentralized;
        } else {
            r.issue("mode.initiation", "expected centralized or decentralized");
        }
        s.initiation.ott_enabled = r.boolean(*mode, "ott_enabled", "mode", false);
    }

    if (const json* st = r.field(doc, "settings", "", false)) {
        const std::string p = "settings";
        s.homogeneity_threshold = r.number(*st, "homogeneity_threshold", p, kDefaultHomogeneityThreshold);
        s.security_tolerance = r.integer(*st, "security_tolerance", p, 0);
        s.conflict_window = r.number(*st, "conflict_window", p, kDefaultConflictWindow);
        s.utilization_bin = r.number(*st, "utilization_bin", p, kSecondsPerHour);
        s.non_rush_policy = r.boolean(*st, "non_rush_policy", p, false);
        s.relational_bits = r.count(*st, "relational_bits", p, 65536);
        s.effect.negative_transfer_factor = r.number(*st, "negative_transfer_factor", p, 0.9);
        s.effect.retune = r.boolean(*st, "retune", p, true);
    }

    if (const json* list = r.field(doc, "events", "", false); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            s.events.push_back(read_event(r, (*list)[i], index_path("events", i)));
        }
    }
    if (const json* syn = r.field(doc, "synthetic", "", false)) {
        SyntheticTrace t;
        t.update_period = r.number(*syn, "update_period", "synthetic", 0.0);
        t.update_jitter = r.number(*syn, "update_jitter", "synthetic", 0.0);
        t.demand_period = r.number(*syn, "demand_period", "synthetic", 0.0);
        t.demand_jitter = r.number(*syn, "demand_jitter", "synthetic", 0.0);
        s.synthetic = t;
    }

    auto semantic = validate_scenario(s);
    for (auto& issue : semantic) {
        if (std::find(result.issues.begin(), result.issues.end(), issue) == result.issues.end()) {
            result.issues.push_back(std::move(issue));
        }
    }
    return result;
}

LoadResult load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::vector<ValidationIssue> validate(const std::filesystem::path& path) {
    return load_scenario(path).issues;
}

} // namespace tl6g
