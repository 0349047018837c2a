#include "evonf/local_search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "evonf/errors.hpp"
#include "evonf/tnorm.hpp"

namespace evonf {

namespace {

// Flat parameter layout shared by get/set/gradient:
// [MF params, input-major, label-minor] [consequents, rule-major] [T-norm p].
struct ParamMap {
    std::vector<std::size_t> mf_offset; // per (input, label), flattened; prefix offsets
    std::vector<std::size_t> label_off; // start of each input's labels in mf_offset / tables
    std::size_t mf_total = 0;
    std::size_t cons_base = 0;
    std::size_t tnorm_index = 0;
    std::size_t total = 0;
    std::size_t labels_total = 0;

    explicit ParamMap(const TSKModel& m) {
        label_off.reserve(m.partitions.size() + 1);
        for (const auto& part : m.partitions) {
            label_off.push_back(labels_total);
            for (const auto& mf : part) {
                mf_offset.push_back(mf_total);
                mf_total += mf_param_count(mf_kind(mf));
            }
            labels_total += part.size();
        }
        label_off.push_back(labels_total);
        cons_base = mf_total;
        std::size_t cons = m.rulebase.rules.size() * (m.n_inputs() + 1);
        tnorm_index = cons_base + cons;
        total = tnorm_index + 1;
    }
};

// Per-call evaluation engine. Memberships and their -p powers are tabulated
// once per sample and shared by every rule, so the work per (sample, rule)
// is table lookups plus one root.
struct TableEngine {
    const TSKModel& model;
    ParamMap map;
    double p;
    std::size_t n;
    double n_active;

    struct VarRef {
        std::size_t input;
        std::uint32_t mask;
    };
    struct RuleRef {
        std::size_t rule;
        std::size_t var_begin;
        std::size_t var_end;
    };
    std::vector<RuleRef> active;
    std::vector<VarRef> vars;

    // per-sample tables
    std::vector<double> m_tab;
    std::vector<double> pw_tab;

    // per-rule forward scratch
    struct Fired {
        double w;
        double g;
        double s;       // S-space accumulator after subtracting (folded - 1)
        double ln_sum;  // sum of ln(m) * m^-p over folded operands
        std::size_t folded;
        std::size_t part_begin;
        std::size_t part_end;
    };
    std::vector<Fired> fired;
    std::vector<std::size_t> part_labels; // flat table offsets of participating labels

    explicit TableEngine(const TSKModel& m, const Dataset& data) : model(m), map(m), p(m.tnorm.p), n(m.n_inputs()) {
        validate_model(m);
        if (data.empty()) throw DatasetEmpty("no rows to evaluate");
        if (data.n_inputs != n)
            throw DimensionMismatch("dataset has " + std::to_string(data.n_inputs) +
                                    " inputs, model expects " + std::to_string(n));
        for (std::size_t k = 0; k < m.rulebase.rules.size(); ++k) {
            if (!m.rulebase.active[k]) continue;
            RuleRef ref{k, vars.size(), 0};
            for (std::size_t i = 0; i < n; ++i)
                if (m.rulebase.rules[k].antecedent[i] != 0)
                    vars.push_back({i, m.rulebase.rules[k].antecedent[i]});
            ref.var_end = vars.size();
            active.push_back(ref);
        }
        n_active = static_cast<double>(active.size());
        m_tab.resize(map.labels_total);
        pw_tab.resize(map.labels_total);
        fired.resize(active.size());
        part_labels.resize(active.size() * n);
    }

    void tabulate(std::span<const double> x) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& part = model.partitions[i];
            std::size_t off = map.label_off[i];
            for (std::size_t j = 0; j < part.size(); ++j) {
                double m = eval_mf(part[j], x[i]);
                m_tab[off + j] = m;
                pw_tab[off + j] = (m > 0.0 && m < 1.0) ? std::pow(m, -p) : 1.0;
            }
        }
    }

    // Firing and consequent of every active rule at x; returns the model
    // output. Must agree bit for bit with infer(): same fold order, same
    // identity/zero shortcuts, same fallback.
    double forward(std::span<const double> x) {
        double total = 0.0, weighted = 0.0, plain = 0.0;
        std::size_t part_pos = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const RuleRef& ref = active[a];
            Fired& f = fired[a];
            f.part_begin = part_pos;
            f.s = 0.0;
            f.ln_sum = 0.0;
            f.folded = 0;
            double single = 1.0;
            double single_pw = 1.0;
            bool dead = false;
            for (std::size_t v = ref.var_begin; v < ref.var_end; ++v) {
                const VarRef& vr = vars[v];
                std::size_t off = map.label_off[vr.input];
                std::size_t best_j = 0;
                double best = -1.0;
                for (std::uint32_t mask = vr.mask; mask != 0; mask &= mask - 1) {
                    auto j = static_cast<std::size_t>(std::countr_zero(mask));
                    if (m_tab[off + j] > best) {
                        best = m_tab[off + j];
                        best_j = j;
                    }
                }
                if (best == 0.0) {
                    dead = true;
                    break;
                }
                part_labels[part_pos++] = off + best_j;
                if (best == 1.0) continue;
                single = best;
                single_pw = pw_tab[off + best_j];
                f.s += single_pw;
                f.ln_sum += std::log(best) * single_pw;
                ++f.folded;
            }
            if (dead) {
                f.w = 0.0;
                part_pos = f.part_begin;
            } else if (f.folded == 0) {
                f.w = 1.0;
                f.s = 1.0;
            } else if (f.folded == 1) {
                // identity operands contribute exactly +1 - 1 to S, so S
                // reduces to the lone power
                f.w = single;
                f.s = single_pw;
            } else {
                f.s -= static_cast<double>(f.folded - 1);
                f.w = std::pow(f.s, -1.0 / p);
            }
            f.part_end = part_pos;
            const Rule& rule = model.rulebase.rules[ref.rule];
            double g = rule.consequent[0];
            for (std::size_t i = 0; i < n; ++i) g += rule.consequent[i + 1] * x[i];
            f.g = g;
            total += f.w;
            weighted += f.w * g;
            plain += g;
        }
        last_total = total;
        if (total < kFiringEpsilon) return plain / n_active;
        return weighted / total;
    }

    double last_total = 0.0;
};

} // namespace

std::size_t model_param_count(const TSKModel& model) { return ParamMap(model).total; }

void get_model_params(const TSKModel& model, std::span<double> out) {
    ParamMap map(model);
    if (out.size() != map.total)
        throw DimensionMismatch("parameter buffer holds " + std::to_string(out.size()) +
                                ", model has " + std::to_string(map.total));
    std::size_t pos = 0;
    for (const auto& part : model.partitions)
        for (const auto& mf : part)
            for (std::size_t k = 0; k < mf_param_count(mf_kind(mf)); ++k) out[pos++] = mf_param(mf, k);
    for (const Rule& r : model.rulebase.rules)
        for (double c : r.consequent) out[pos++] = c;
    out[pos] = model.tnorm.p;
}

void set_model_params(TSKModel& model, std::span<const double> params) {
    ParamMap map(model);
    if (params.size() != map.total)
        throw DimensionMismatch("parameter buffer holds " + std::to_string(params.size()) +
                                ", model has " + std::to_string(map.total));
    std::size_t pos = 0;
    for (auto& part : model.partitions)
        for (auto& mf : part) {
            MFKind kind = mf_kind(mf);
            for (std::size_t k = 0; k < mf_param_count(kind); ++k) {
                double v = params[pos++];
                if (mf_param_is_width(kind, k)) v = std::max(v, kWidthFloor);
                set_mf_param(mf, k, v);
            }
        }
    for (Rule& r : model.rulebase.rules)
        for (double& c : r.consequent) c = params[pos++];
    model.tnorm.p = std::clamp(params[pos], kTNormParamMin, kTNormParamMax);
}

double mean_squared_error(const TSKModel& model, const Dataset& data) {
    TableEngine eng(model, data);
    double se = 0.0;
    for (std::size_t s = 0; s < data.size(); ++s) {
        eng.tabulate(data.row(s));
        double e = eng.forward(data.row(s)) - data.y[s];
        se += e * e;
    }
    return se / static_cast<double>(data.size());
}

double loss(const TSKModel& model, const Dataset& data) {
    return std::sqrt(mean_squared_error(model, data));
}

std::vector<double> gradient(const TSKModel& model, const Dataset& data, const GdOptions& opts) {
    TableEngine eng(model, data);
    const ParamMap& map = eng.map;
    std::vector<double> grads(map.total, 0.0);
    std::vector<double> dLdm(map.labels_total, 0.0);
    const double p = model.tnorm.p;
    const double inv_n = 1.0 / static_cast<double>(data.size());
    std::vector<double> mf_partials(4);

    for (std::size_t s = 0; s < data.size(); ++s) {
        auto x = data.row(s);
        eng.tabulate(x);
        double yhat = eng.forward(x);
        double W = eng.last_total;
        bool fallback = W < kFiringEpsilon;
        double dLdy = 2.0 * (yhat - data.y[s]) * inv_n;

        bool any_mf = false;
        for (std::size_t a = 0; a < eng.active.size(); ++a) {
            const auto& ref = eng.active[a];
            const auto& f = eng.fired[a];
            double dy_dg = fallback ? 1.0 / eng.n_active : f.w / W;
            if (opts.tune_consequents && dy_dg != 0.0) {
                double coef = dLdy * dy_dg;
                std::size_t base = map.cons_base + ref.rule * (eng.n + 1);
                grads[base] += coef;
                for (std::size_t i = 0; i < eng.n; ++i) grads[base + 1 + i] += coef * x[i];
            }
            if (fallback || !(f.w > 0.0)) continue;
            if (!opts.tune_mf && !opts.tune_tnorm) continue;
            double common = dLdy * (f.g - yhat) / W;
            if (opts.tune_mf) {
                // dw/dm_i = w * m_i^(-p) / (S * m_i); exact in every fold
                // branch, including operands equal to 1. With a single folded
                // operand the ratio is 1 by construction (w == m); the power
                // table may hold inf there, so it must not enter the product.
                for (std::size_t q = f.part_begin; q < f.part_end; ++q) {
                    std::size_t off = eng.part_labels[q];
                    double dwdm;
                    if (f.folded == 1)
                        dwdm = eng.m_tab[off] < 1.0 ? 1.0 : f.w / f.s;
                    else
                        dwdm = f.w * eng.pw_tab[off] / (f.s * eng.m_tab[off]);
                    dLdm[off] += common * dwdm;
                    any_mf = true;
                }
            }
            if (opts.tune_tnorm && f.folded >= 2) {
                double dwdp = f.w * (std::log(f.s) / (p * p) + f.ln_sum / (p * f.s));
                grads[map.tnorm_index] += common * dwdp;
            }
        }

        if (any_mf) {
            for (std::size_t i = 0; i < eng.n; ++i) {
                std::size_t off = map.label_off[i];
                const auto& part = model.partitions[i];
                for (std::size_t j = 0; j < part.size(); ++j) {
                    double d = dLdm[off + j];
                    if (d == 0.0) continue;
                    std::size_t count = mf_param_count(mf_kind(part[j]));
                    mf_gradient(part[j], x[i], std::span<double>(mf_partials.data(), count));
                    std::size_t base = map.mf_offset[off + j];
                    for (std::size_t k = 0; k < count; ++k) grads[base + k] += d * mf_partials[k];
                    dLdm[off + j] = 0.0;
                }
            }
        }
    }
    return grads;
}

void gd_step(TSKModel& model, const Dataset& data, const LearnParams& learn, GdState& state,
             const GdOptions& opts) {
    if (!(learn.rate >= 0.0)) throw InvalidParameter("learning rate must be non-negative");
    if (learn.momentum < 0.0 || learn.momentum >= 1.0)
        throw InvalidParameter("momentum must lie in [0, 1)");
    std::vector<double> grads = gradient(model, data, opts);
    if (state.velocity.empty()) state.velocity.assign(grads.size(), 0.0);
    if (state.velocity.size() != grads.size())
        throw DimensionMismatch("velocity carries " + std::to_string(state.velocity.size()) +
                                " entries, model has " + std::to_string(grads.size()));
    std::vector<double> params(grads.size());
    get_model_params(model, params);
    for (std::size_t i = 0; i < grads.size(); ++i) {
        state.velocity[i] = learn.momentum * state.velocity[i] - learn.rate * grads[i];
        params[i] += state.velocity[i];
    }
    set_model_params(model, params);
}

} // namespace evonf
