#include "qcorr/report.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "qcorr/rsp.hpp"

#include <json.hpp>

namespace qcorr {
namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void append_vec(std::string& out, const Vec3& v) {
    out += '[';
    out += fmt17(v.x);
    out += ", ";
    out += fmt17(v.y);
    out += ", ";
    out += fmt17(v.z);
    out += ']';
}

}  // namespace

ReportDocument build_report(const DensityMatrix& rho, const std::string& label,
                            const std::vector<Vec3>& targets, const std::vector<Vec3>& betas) {
    ReportDocument doc;
    doc.label = label;
    doc.input_digest = state_digest(rho);
    doc.dim = rho.dim();
    if (doc.dim == 2) {
        doc.measures.purity = purity(rho);
        doc.measures.c2 = c2_coherence(rho);
        doc.measures.c_l2 = c_l2_coherence(rho);
        doc.measures.l1_coherence = l1_coherence(rho);
        doc.measures.rel_entropy_coherence = rel_entropy_coherence(rho);
        return doc;
    }
    doc.measures = compute_measures(rho);
    const BlochDecomposition d = pauli_decompose(rho);
    doc.rsp.spherical_average = spherical_average_payoff(d);
    const MinAveragePayoff mn = min_average_payoff(d);
    doc.rsp.min_average = mn.value;
    doc.rsp.min_average_beta = mn.beta_star;
    for (const Vec3& raw : targets) {
        TargetReport t;
        t.target = normalized(raw);
        const OptimalAlpha oa = optimal_alpha(d, t.target);
        t.alpha = oa.alpha;
        t.degenerate = oa.degenerate;
        t.fidelity = rsp_fidelity(d, oa.alpha, t.target);
        t.payoff = rsp_payoff(d, oa.alpha, t.target);
        doc.rsp.targets.push_back(t);
    }
    for (const Vec3& raw : betas) {
        CircleReport c;
        c.beta = normalized(raw);
        c.average = circular_average_payoff(d, c.beta);
        doc.rsp.circles.push_back(c);
    }
    doc.teleport = fidelity_discord_bounds(rho);
    return doc;
}

std::string to_json(const ReportDocument& doc) {
    std::string o = "{\n";
    o += "  \"label\": " + json_string(doc.label) + ",\n";
    o += "  \"input_digest\": " + json_string(doc.input_digest) + ",\n";
    o += "  \"dim\": " + std::to_string(doc.dim) + ",\n";
    o += "  \"measures\": {\n";
    o += "    \"purity\": " + fmt17(doc.measures.purity) + ",\n";
    o += "    \"c2\": " + fmt17(doc.measures.c2) + ",\n";
    o += "    \"c_l2\": " + fmt17(doc.measures.c_l2) + ",\n";
    o += "    \"l1_coherence\": " + fmt17(doc.measures.l1_coherence) + ",\n";
    o += "    \"rel_entropy_coherence\": " + fmt17(doc.measures.rel_entropy_coherence);
    if (doc.dim == 4) {
        o += ",\n";
        o += "    \"correlated_coherence\": " + fmt17(doc.measures.correlated_coherence) + ",\n";
        o += "    \"geometric_discord_normalized\": " +
             fmt17(doc.measures.geometric_discord_normalized) + ",\n";
        o += "    \"geometric_discord_renormalized\": " +
             fmt17(doc.measures.geometric_discord_renormalized) + ",\n";
        o += "    \"entropic_discord\": " + fmt17(doc.measures.entropic_discord) + ",\n";
        o += "    \"negativity\": " + fmt17(doc.measures.negativity);
    }
    o += "\n  }";
    if (doc.dim == 4) {
        o += ",\n  \"rsp\": {\n";
        o += "    \"spherical_average\": " + fmt17(doc.rsp.spherical_average) + ",\n";
        o += "    \"min_average\": " + fmt17(doc.rsp.min_average) + ",\n";
        o += "    \"min_average_beta\": ";
        append_vec(o, doc.rsp.min_average_beta);
        o += ",\n    \"targets\": [";
        for (std::size_t i = 0; i < doc.rsp.targets.size(); ++i) {
            const TargetReport& t = doc.rsp.targets[i];
            o += i == 0 ? "\n" : ",\n";
            o += "      {\"target\": ";
            append_vec(o, t.target);
            o += ", \"alpha\": ";
            append_vec(o, t.alpha);
            o += ", \"degenerate\": ";
            o += t.degenerate ? "true" : "false";
            o += ", \"fidelity\": " + fmt17(t.fidelity);
            o += ", \"payoff\": " + fmt17(t.payoff) + "}";
        }
        o += doc.rsp.targets.empty() ? "]" : "\n    ]";
        o += ",\n    \"circles\": [";
        for (std::size_t i = 0; i < doc.rsp.circles.size(); ++i) {
            const CircleReport& c = doc.rsp.circles[i];
            o += i == 0 ? "\n" : ",\n";
            o += "      {\"beta\": ";
            append_vec(o, c.beta);
            o += ", \"average\": " + fmt17(c.average) + "}";
        }
        o += doc.rsp.circles.empty() ? "]" : "\n    ]";
        o += "\n  },\n";
        o += "  \"teleport\": {\n";
        o += "    \"fidelity\": " + fmt17(doc.teleport.fidelity) + ",\n";
        o += "    \"singular_values\": [" + fmt17(doc.teleport.singular_values.values[0]) +
             ", " + fmt17(doc.teleport.singular_values.values[1]) + ", " +
             fmt17(doc.teleport.singular_values.values[2]) + "],\n";
        o += "    \"bound_lower\": " + fmt17(doc.teleport.bound_lower) + ",\n";
        o += "    \"bound_upper\": " + fmt17(doc.teleport.bound_upper) + ",\n";
        o += "    \"bounds_satisfied\": ";
        o += doc.teleport.bounds_satisfied ? "true" : "false";
        o += ",\n";
        o += "    \"correlated_coherence\": " + fmt17(doc.teleport.correlated_coherence);
        o += "\n  }";
    }
    o += ",\n  \"tool_version\": " + json_string(doc.tool_version) + "\n}\n";
    return o;
}

std::string to_text(const ReportDocument& doc) {
    std::ostringstream o;
    auto line = [&o](const char* name, const std::string& value) {
        o << "  ";
        o << name;
        for (std::size_t i = std::string(name).size(); i < 32; ++i) o << ' ';
        o << value << '\n';
    };
    o << "state " << (doc.label.empty() ? "(unlabeled)" : doc.label) << "  digest "
      << doc.input_digest << "  dim " << doc.dim << '\n';
    o << "measures\n";
    line("purity", fmt17(doc.measures.purity));
    line("c2", fmt17(doc.measures.c2));
    line("c_l2", fmt17(doc.measures.c_l2));
    line("l1_coherence", fmt17(doc.measures.l1_coherence));
    line("rel_entropy_coherence", fmt17(doc.measures.rel_entropy_coherence));
    if (doc.dim != 4) return o.str();
    line("correlated_coherence", fmt17(doc.measures.correlated_coherence));
    line("geometric_discord_normalized", fmt17(doc.measures.geometric_discord_normalized));
    line("geometric_discord_renormalized", fmt17(doc.measures.geometric_discord_renormalized));
    line("entropic_discord", fmt17(doc.measures.entropic_discord));
    line("negativity", fmt17(doc.measures.negativity));
    o << "rsp\n";
    line("spherical_average", fmt17(doc.rsp.spherical_average));
    line("min_average", fmt17(doc.rsp.min_average));
    std::string beta;
    append_vec(beta, doc.rsp.min_average_beta);
    line("min_average_beta", beta);
    for (const TargetReport& t : doc.rsp.targets) {
        std::string s;
        append_vec(s, t.target);
        s += "  alpha ";
        append_vec(s, t.alpha);
        if (t.degenerate) s += "  (degenerate: correlations vanish along this target)";
        s += "  fidelity " + fmt17(t.fidelity) + "  payoff " + fmt17(t.payoff);
        line("target", s);
    }
    for (const CircleReport& c : doc.rsp.circles) {
        std::string s;
        append_vec(s, c.beta);
        s += "  average " + fmt17(c.average);
        line("circle", s);
    }
    o << "teleport\n";
    line("fidelity", fmt17(doc.teleport.fidelity));
    line("singular_values",
         "[" + fmt17(doc.teleport.singular_values.values[0]) + ", " +
             fmt17(doc.teleport.singular_values.values[1]) + ", " +
             fmt17(doc.teleport.singular_values.values[2]) + "]");
    line("bound_lower", fmt17(doc.teleport.bound_lower));
    line("bound_upper", fmt17(doc.teleport.bound_upper));
    line("bounds_satisfied", doc.teleport.bounds_satisfied ? "true" : "false");
    return o.str();
}

std::string to_csv(const std::vector<ReportDocument>& docs) {
    std::size_t n_targets = 0, n_circles = 0;
    for (const ReportDocument& doc : docs) {
        n_targets = std::max(n_targets, doc.rsp.targets.size());
        n_circles = std::max(n_circles, doc.rsp.circles.size());
    }

    std::string o =
        "label,input_digest,dim,purity,c2,c_l2,l1_coherence,rel_entropy_coherence,"
        "correlated_coherence,geometric_discord_normalized,geometric_discord_renormalized,"
        "entropic_discord,negativity,rsp_spherical_average,rsp_min_average,"
        "rsp_min_average_beta_x,rsp_min_average_beta_y,rsp_min_average_beta_z,"
        "teleport_fidelity,teleport_singular_value_1,teleport_singular_value_2,"
        "teleport_singular_value_3,teleport_bound_lower,teleport_bound_upper,"
        "teleport_bounds_satisfied,teleport_correlated_coherence";
    for (std::size_t k = 0; k < n_targets; ++k) {
        const std::string p = ",target" + std::to_string(k) + "_";
        for (const char* leaf : {"x", "y", "z", "alpha_x", "alpha_y", "alpha_z", "degenerate",
                                 "fidelity", "payoff"})
            o += p + leaf;
    }
    for (std::size_t k = 0; k < n_circles; ++k) {
        const std::string p = ",beta" + std::to_string(k) + "_";
        for (const char* leaf : {"x", "y", "z", "average"}) o += p + leaf;
    }
    o += ",tool_version\n";

    for (const ReportDocument& doc : docs) {
        // commas and quotes in labels get standard CSV quoting
        std::string label = doc.label;
        if (label.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : label) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            label = quoted + "\"";
        }
        o += label + ',' + doc.input_digest + ',' + std::to_string(doc.dim);
        o += ',' + fmt17(doc.measures.purity) + ',' + fmt17(doc.measures.c2) + ',' +
             fmt17(doc.measures.c_l2) + ',' + fmt17(doc.measures.l1_coherence) + ',' +
             fmt17(doc.measures.rel_entropy_coherence);
        if (doc.dim == 4) {
            o += ',' + fmt17(doc.measures.correlated_coherence) + ',' +
                 fmt17(doc.measures.geometric_discord_normalized) + ',' +
                 fmt17(doc.measures.geometric_discord_renormalized) + ',' +
                 fmt17(doc.measures.entropic_discord) + ',' + fmt17(doc.measures.negativity);
            o += ',' + fmt17(doc.rsp.spherical_average) + ',' + fmt17(doc.rsp.min_average) +
                 ',' + fmt17(doc.rsp.min_average_beta.x) + ',' +
                 fmt17(doc.rsp.min_average_beta.y) + ',' + fmt17(doc.rsp.min_average_beta.z);
            o += ',' + fmt17(doc.teleport.fidelity) + ',' +
                 fmt17(doc.teleport.singular_values.values[0]) + ',' +
                 fmt17(doc.teleport.singular_values.values[1]) + ',' +
                 fmt17(doc.teleport.singular_values.values[2]) + ',' +
                 fmt17(doc.teleport.bound_lower) + ',' + fmt17(doc.teleport.bound_upper) + ',' +
                 (doc.teleport.bounds_satisfied ? "true" : "false") + ',' +
                 fmt17(doc.teleport.correlated_coherence);
        } else {
            for (int i = 0; i < 18; ++i) o += ',';
        }
        for (std::size_t k = 0; k < n_targets; ++k) {
            if (k < doc.rsp.targets.size()) {
                const TargetReport& t = doc.rsp.targets[k];
                o += ',' + fmt17(t.target.x) + ',' + fmt17(t.target.y) + ',' +
                     fmt17(t.target.z) + ',' + fmt17(t.alpha.x) + ',' + fmt17(t.alpha.y) +
                     ',' + fmt17(t.alpha.z) + ',' + (t.degenerate ? "true" : "false") + ',' +
                     fmt17(t.fidelity) + ',' + fmt17(t.payoff);
            } else {
                for (int i = 0; i < 9; ++i) o += ',';
            }
        }
        for (std::size_t k = 0; k < n_circles; ++k) {
            if (k < doc.rsp.circles.size()) {
                const CircleReport& c = doc.rsp.circles[k];
                o += ',' + fmt17(c.beta.x) + ',' + fmt17(c.beta.y) + ',' + fmt17(c.beta.z) +
                     ',' + fmt17(c.average);
            } else {
                for (int i = 0; i < 4; ++i) o += ',';
            }
        }
        o += ',';
        o += doc.tool_version;
        o += '\n';
    }
    return o;
}

}  // namespace qcorr
