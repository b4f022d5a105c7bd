#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3dual/dataset.hpp"
#include "k3dual/discriminant.hpp"
#include "k3dual/nikulin.hpp"
#include "k3dual/picard.hpp"
#include "k3dual/search.hpp"

namespace k3dual {

inline constexpr int kReportSchemaVersion = 1;

struct PipelineConfig {
    SearchLimits limits;              // bound defaults to default_search_bound()
    double search_seconds = 20.0;     // wall-clock guard per bounded search
    bool strict_nikulin = true;
    SignaturePair ambient{3, 19};
    bool concurrent = true;

    PipelineConfig() { limits.bound = default_search_bound(); }
};

enum class StepStatus { Pass, Warn, Fail, Skipped };
const char* step_status_name(StepStatus s);

struct StepRecord {
    int number = 0;
    std::string name;
    StepStatus status = StepStatus::Skipped;
    std::string detail;
};

enum class NoteLevel { Info, Warn, Fail };
const char* note_level_name(NoteLevel l);

struct ReportNote {
    int step = 0;
    NoteLevel level = NoteLevel::Info;
    std::string side;  // "delta", "delta_prime" or empty
    std::string text;
};

struct LatticeCheck {
    std::string target;               // lattice expression
    GramLattice target_lattice;
    std::optional<IntMatrix> rows;    // basis change applied first, when present
    GramLattice source;               // gram after the basis change
    SearchStatus status = SearchStatus::NotFound;
    std::optional<IntMatrix> witness; // source -> target isometry
    bool genus_match = false;         // rank, signature and discriminant form agree
    std::optional<FormIsomorphism> form_witness;
    std::string detail;
};

struct SplitResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<HyperbolicPlane> plane;
    Integer complement_det;
    std::optional<SignaturePair> complement_signature;
    std::string detail;
};

struct SideReport {
    std::string polytope;
    std::vector<LatticeVector> vertices;
    bool reflexive = false;
    long rk_l0 = -1;
    std::optional<PicardCount> counts;
    std::vector<LatticeVector> rays;
    std::optional<PicardBasis> basis;
    std::optional<GramLattice> gram;
    Integer det;
    std::optional<SignaturePair> signature;
    std::optional<FiniteQuadraticForm> form;
    std::optional<NikulinReport> nikulin;
    std::vector<LatticeCheck> lattice_checks;
    std::optional<SplitResult> split;
};

struct OrthogonalityResult {
    Integer det_sum;     // discr(Pic_delta + U)
    Integer det_prime;   // discr(Pic_delta')
    bool determinants_opposite = false;
    bool shortcut_agrees = false;  // A(Pic_delta + U) and A(Pic_delta) have equal invariants
    std::optional<FormIsomorphism> witness;
};

struct DualityReport {
    std::string case_name;
    std::string singularity, dual_singularity;
    long search_bound = 0;
    bool strict_nikulin = true;
    SignaturePair ambient{3, 19};
    std::vector<StepRecord> steps;
    SideReport delta, delta_prime;
    std::optional<IntMatrix> equivalence;  // polar_dual(delta) -> delta_prime, row action
    std::optional<long> rho_sum;
    std::optional<OrthogonalityResult> orthogonality;
    std::vector<ReportNote> notes;
    bool passed = false;

    const StepRecord* step(int number) const;
    std::size_t warnings() const;
};

DualityReport verify_pair(const CaseDefinition& c, const PipelineConfig& config = {});
std::vector<DualityReport> verify_pairs(const std::vector<CaseDefinition>& cases, const PipelineConfig& config = {});

Json report_to_json(const DualityReport& r);
Json reports_to_json(const std::vector<DualityReport>& reports);

// One line per report in the layout of the duality table.
std::string table_text(const std::vector<DualityReport>& reports);
// Step-by-step listing of a single report.
std::string report_text(const DualityReport& r);

struct ReverifyResult {
    bool witnesses_ok = true;
    bool verdict_reproduced = true;
    std::vector<std::string> failures;
    bool ok() const { return witnesses_ok && verdict_reproduced; }
};

// Re-checks every witness stored in a serialized report against the data
// it carries, and recomputes the verdict from the step records.
ReverifyResult reverify_report(const Json& report);

}  // namespace k3dual
