#pragma once

#include <string>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/state.hpp"
#include "qcorr/teleport.hpp"

namespace qcorr {

inline constexpr char kToolVersion[] = "0.1.0";

struct TargetReport {
    Vec3 target{};
    Vec3 alpha{};  // measurement direction attaining the payoff
    bool degenerate = false;
    double fidelity = 0.0;
    double payoff = 0.0;
};

struct CircleReport {
    Vec3 beta{};  // normal of the requested great circle
    double average = 0.0;
};

struct RspReport {
    double spherical_average = 0.0;
    double min_average = 0.0;
    Vec3 min_average_beta{};  // normal of the worst great circle
    std::vector<TargetReport> targets;
    std::vector<CircleReport> circles;
};

struct ReportDocument {
    std::string label;
    std::string input_digest;
    int dim = 4;
    // dim 2 carries only the scalar coherence fields; the two-qubit blocks
    // stay defaulted and the writers omit them
    MeasureReport measures{};
    RspReport rsp{};
    TeleportReport teleport{};
    std::string tool_version = kToolVersion;
};

ReportDocument build_report(const DensityMatrix& rho, const std::string& label,
                            const std::vector<Vec3>& targets = {},
                            const std::vector<Vec3>& betas = {});

// All writers emit every numeric field with 17 significant digits, so json,
// csv, and a reparse agree bit for bit.
std::string to_json(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);
// one header row, one row per document, one column per leaf field; documents
// with fewer targets than the widest one leave the spare cells empty
std::string to_csv(const std::vector<ReportDocument>& docs);

}  // namespace qcorr
