#include "evonf/serialize.hpp"

#include <string>

#include "json.hpp"

#include "evonf/errors.hpp"
#include "evonf/text.hpp"

namespace evonf {

namespace {

using nlohmann::json;

json mf_to_json(const MembershipFunction& mf) {
    json j;
    MFKind kind = mf_kind(mf);
    j["kind"] = kind == MFKind::bell ? "bell" : "gaussian";
    json params = json::array();
    for (std::size_t k = 0; k < mf_param_count(kind); ++k) params.push_back(mf_param(mf, k));
    j["params"] = params;
    return j;
}

MembershipFunction mf_from_json(const json& j) {
    std::string kind_name = j.at("kind").get<std::string>();
    MFKind kind;
    if (kind_name == "bell")
        kind = MFKind::bell;
    else if (kind_name == "gaussian")
        kind = MFKind::gaussian;
    else
        throw FormatError("unknown membership kind '" + kind_name + "'");
    MembershipFunction mf = kind == MFKind::bell ? MembershipFunction{BellMF{}}
                                                 : MembershipFunction{GaussianMF{}};
    const json& params = j.at("params");
    if (!params.is_array() || params.size() != mf_param_count(kind))
        throw FormatError("membership of kind '" + kind_name + "' needs " +
                          std::to_string(mf_param_count(kind)) + " parameters");
    for (std::size_t k = 0; k < params.size(); ++k) set_mf_param(mf, k, params[k].get<double>());
    return mf;
}

} // namespace

std::string bundle_to_json(const ModelBundle& bundle) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["tnorm_p"] = bundle.model.tnorm.p;
    doc["learn"] = {{"rate", bundle.learn.rate}, {"momentum", bundle.learn.momentum}};

    json parts = json::array();
    for (const auto& part : bundle.model.partitions) {
        json labels = json::array();
        for (const auto& mf : part) labels.push_back(mf_to_json(mf));
        parts.push_back(std::move(labels));
    }
    doc["partitions"] = std::move(parts);

    json rules = json::array();
    const RuleBase& rb = bundle.model.rulebase;
    for (std::size_t k = 0; k < rb.rules.size(); ++k) {
        json r;
        r["antecedent"] = rb.rules[k].antecedent;
        r["consequent"] = rb.rules[k].consequent;
        r["active"] = rb.active[k] != 0;
        rules.push_back(std::move(r));
    }
    doc["rules"] = std::move(rules);

    if (bundle.scaling) {
        const ScalingRecord& s = *bundle.scaling;
        doc["scaling"] = {
            {"x_min", s.x_min}, {"x_max", s.x_max}, {"y_min", s.y_min}, {"y_max", s.y_max}};
    }
    return doc.dump(2) + "\n";
}

ModelBundle bundle_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("not valid JSON: ") + e.what());
    }
    try {
        int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw FormatError("unsupported format_version " + std::to_string(version));

        ModelBundle bundle;
        bundle.model.tnorm.p = doc.at("tnorm_p").get<double>();
        bundle.learn.rate = doc.at("learn").at("rate").get<double>();
        bundle.learn.momentum = doc.at("learn").at("momentum").get<double>();

        for (const json& part : doc.at("partitions")) {
            std::vector<MembershipFunction> labels;
            for (const json& mf : part) labels.push_back(mf_from_json(mf));
            bundle.model.partitions.push_back(std::move(labels));
        }
        for (const json& r : doc.at("rules")) {
            Rule rule;
            rule.antecedent = r.at("antecedent").get<std::vector<std::uint32_t>>();
            rule.consequent = r.at("consequent").get<std::vector<double>>();
            bundle.model.rulebase.rules.push_back(std::move(rule));
            bundle.model.rulebase.active.push_back(r.at("active").get<bool>() ? 1 : 0);
        }
        if (doc.contains("scaling")) {
            ScalingRecord s;
            const json& sc = doc.at("scaling");
            s.x_min = sc.at("x_min").get<std::vector<double>>();
            s.x_max = sc.at("x_max").get<std::vector<double>>();
            s.y_min = sc.at("y_min").get<double>();
            s.y_max = sc.at("y_max").get<double>();
            bundle.scaling = std::move(s);
        }
        validate_model(bundle.model);
        return bundle;
    } catch (const FormatError&) {
        throw;
    } catch (const json::exception& e) {
        throw FormatError(std::string("document structure: ") + e.what());
    } catch (const Error& e) {
        throw FormatError(std::string("invalid model: ") + e.what());
    }
}

std::string rulebase_to_text(const TSKModel& model) {
    std::string out;
    const RuleBase& rb = model.rulebase;
    for (std::size_t k = 0; k < rb.rules.size(); ++k) {
        const Rule& r = rb.rules[k];
        out += "IF ";
        bool first_clause = true;
        for (std::size_t i = 0; i < r.antecedent.size(); ++i) {
            std::uint32_t mask = r.antecedent[i];
            if (mask == 0) continue;
            if (!first_clause) out += " AND ";
            first_clause = false;
            out += "x" + std::to_string(i + 1) + " IS ";
            bool multi = (mask & (mask - 1)) != 0;
            if (multi) out += '(';
            bool first_label = true;
            for (std::size_t j = 0; j < 32; ++j) {
                if (!((mask >> j) & 1u)) continue;
                if (!first_label) out += " OR ";
                first_label = false;
                out += "mf" + std::to_string(j + 1);
            }
            if (multi) out += ')';
        }
        if (first_clause) out += "TRUE";
        out += " THEN y = ";
        append_double(out, r.consequent[0] + 0.0);
        for (std::size_t j = 1; j < r.consequent.size(); ++j) {
            double c = r.consequent[j] + 0.0; // folds -0 into +0
            out += c < 0.0 ? " - " : " + ";
            append_double(out, c < 0.0 ? -c : c);
            out += "*x" + std::to_string(j);
        }
        out += " ; active=";
        out += rb.active[k] ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace evonf
