#include "bigdeg/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bigdeg {

namespace {

void require_keys(const Json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw std::runtime_error(where + ": object expected");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw std::runtime_error(where + ": unknown key '" + key + "'");
}

}  // namespace

Json to_json(const Signature& sig) {
    Json rels = Json::array();
    for (const auto& r : sig.relations)
        rels.push_back({{"name", r.name}, {"arity", r.arity}, {"symmetric", r.symmetric}});
    return Json{{"relations", rels}};
}

Signature signature_from_json(const Json& j) {
    require_keys(j, {"relations"}, "signature");
    Signature sig;
    for (const auto& r : j.at("relations")) {
        require_keys(r, {"name", "arity", "symmetric"}, "relation");
        RelationSymbol sym;
        sym.name = r.at("name").get<std::string>();
        sym.arity = r.at("arity").get<int>();
        sym.symmetric = r.at("symmetric").get<bool>();
        if (sym.arity != 1 && sym.arity != 2)
            throw std::runtime_error("relation '" + sym.name + "': arity must be 1 or 2");
        sig.relations.push_back(std::move(sym));
    }
    return sig;
}

Json to_json(const FinStructure& s) {
    Json tuples = Json::array();
    for (const auto& rel : s.tuples) {
        Json rows = Json::array();
        for (const auto& t : rel) rows.push_back(t);
        tuples.push_back(std::move(rows));
    }
    return Json{{"signature", to_json(s.signature)}, {"size", s.size},
                {"tuples", tuples}};
}

FinStructure structure_from_json(const Json& j) {
    require_keys(j, {"signature", "size", "tuples"}, "structure");
    FinStructure s(signature_from_json(j.at("signature")), j.at("size").get<int>());
    const auto& tuples = j.at("tuples");
    if (!tuples.is_array() || tuples.size() != s.signature.relations.size())
        throw std::runtime_error("structure: one tuple list per relation required");
    for (std::size_t r = 0; r < tuples.size(); ++r)
        for (const auto& t : tuples[r]) s.tuples[r].insert(t.get<Tuple>());
    if (s.size < 0 || !s.valid())
        throw std::runtime_error("structure: invariant check failed");
    return s;
}

Json to_json(const ClassSpec& spec) {
    Json j{{"name", spec.name}};
    if (spec.is_linear_order()) {
        j["class"] = "linear-order";
    } else if (const auto* u = spec.as_unrestricted()) {
        j["class"] = "unrestricted-binary";
        Json cs = Json::array();
        for (const auto& c : u->constraints) cs.push_back(to_json(c));
        j["constraints"] = std::move(cs);
    } else {
        j["class"] = "forb";
        Json fs = Json::array();
        for (const auto& f : spec.as_forb()->forbidden) fs.push_back(to_json(f));
        j["forbidden"] = std::move(fs);
    }
    return j;
}

ClassSpec class_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("class"))
        throw std::runtime_error("class spec: 'class' key required");
    const auto kind = j.at("class").get<std::string>();
    ClassSpec spec;
    spec.name = j.value("name", kind);
    if (kind == "linear-order") {
        require_keys(j, {"class", "name"}, "class spec");
        spec.variant = LinearOrderClass{};
    } else if (kind == "unrestricted-binary") {
        require_keys(j, {"class", "name", "constraints"}, "class spec");
        UnrestrictedBinaryClass u;
        for (const auto& c : j.at("constraints"))
            u.constraints.push_back(structure_from_json(c));
        spec.variant = std::move(u);
    } else if (kind == "forb") {
        require_keys(j, {"class", "name", "forbidden"}, "class spec");
        ForbClass f;
        for (const auto& s : j.at("forbidden"))
            f.forbidden.push_back(structure_from_json(s));
        spec.variant = std::move(f);
    } else {
        throw std::runtime_error("class spec: unknown class '" + kind + "'");
    }
    std::string why;
    if (!class_spec_valid(spec, &why))
        throw std::runtime_error("class spec: " + why);
    return spec;
}

Json to_json(const EnumeratedPrefix& prefix) {
    Json log = Json::array();
    for (const auto& e : prefix.log)
        log.push_back({{"stage", e.stage},
                       {"scheduled", e.scheduled},
                       {"realized", e.realized},
                       {"enqueued_at", e.enqueued_at},
                       {"queue_len_at_enqueue", e.queue_len_at_enqueue}});
    return Json{{"spec", to_json(prefix.spec)},
                {"structure", to_json(prefix.structure)},
                {"log", log}};
}

EnumeratedPrefix prefix_from_json(const Json& j) {
    require_keys(j, {"spec", "structure", "log"}, "prefix");
    auto spec = class_spec_from_json(j.at("spec"));
    auto structure = structure_from_json(j.at("structure"));
    // prefix_from_structure re-runs the class-membership gate per stage
    auto prefix = prefix_from_structure(spec, structure);
    prefix.log.clear();
    for (const auto& e : j.at("log")) {
        require_keys(e, {"stage", "scheduled", "realized", "enqueued_at",
                         "queue_len_at_enqueue"}, "log entry");
        EnumeratedPrefix::ScheduleEntry entry;
        entry.stage = e.at("stage").get<int>();
        entry.scheduled = e.at("scheduled").get<CodeSeq>();
        entry.realized = e.at("realized").get<CodeSeq>();
        entry.enqueued_at = e.at("enqueued_at").get<int>();
        entry.queue_len_at_enqueue = e.at("queue_len_at_enqueue").get<int>();
        prefix.log.push_back(std::move(entry));
    }
    if (static_cast<int>(prefix.log.size()) != prefix.size())
        throw std::runtime_error("prefix: one log entry per vertex required");
    return prefix;
}

ClassSpec load_class_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    try {
        return class_spec_from_json(Json::parse(in));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string method_name(DegreeMethod m) {
    switch (m) {
        case DegreeMethod::formula: return "formula";
        case DegreeMethod::generation: return "generation";
        case DegreeMethod::scan: return "scan";
    }
    throw std::logic_error("unknown degree method");
}

std::string target_label(const FinStructure& target) {
    std::ostringstream out;
    bool first = true;
    for (auto word : target.canonical_encoding()) {
        if (!first) out << ':';
        out << word;
        first = false;
    }
    return out.str();
}

namespace {

std::string joined_methods(const DegreeRow& row) {
    std::string out;
    for (auto m : row.methods) {
        if (!out.empty()) out += '+';
        out += method_name(m);
    }
    return out;
}

}  // namespace

std::string degree_table_csv(const DegreeTable& table) {
    std::ostringstream out;
    out << "spec,target,degree,methods,depth,flags\n";
    for (const auto& row : table.rows)
        out << row.spec_id << ',' << target_label(row.target) << ',' << row.degree
            << ',' << joined_methods(row) << ',' << row.depth_used << ','
            << (row.flagged ? "flagged" : "") << '\n';
    return out.str();
}

Json degree_table_json(const DegreeTable& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json methods = Json::array();
        for (auto m : row.methods) methods.push_back(method_name(m));
        rows.push_back({{"spec", row.spec_id},
                        {"target", target_label(row.target)},
                        {"degree", row.degree},
                        {"methods", methods},
                        {"depth", row.depth_used},
                        {"flagged", row.flagged}});
    }
    return Json{{"rows", rows}};
}

std::string persistence_csv(const PersistenceReport& report) {
    std::ostringstream out;
    out << "trial,seed,colors_seen\n";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        out << i << ',' << report.trials[i].seed << ',';
        bool first = true;
        for (int c : report.trials[i].colors_seen) {
            if (!first) out << '|';
            out << c;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string catalog_text(const TypeCatalog& catalog) {
    std::string out;
    for (const auto& line : catalog.lines()) {
        out += line;
        out += '\n';
    }
    return out;
}

std::uint64_t config_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace bigdeg
