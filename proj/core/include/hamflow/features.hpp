#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hamflow/topo_index.hpp"

namespace hamflow {

enum class FeatureKind { DensityMatch, DirectionMatch, PoincareIndex, ConleyIndex };

const char* to_string(FeatureKind kind);

enum class DirectionMode {
    Wrapped,  // per-point circular distance min(|d|, 2pi - |d|)
    Raw       // plain differences of angle values
};

/// One streamline feature anchored to a canonical-image orbit.
struct FeatureTemplate {
    FeatureKind kind = FeatureKind::DensityMatch;
    int orbit_id = 0;                   // index into FeatureBank::orbits
    std::vector<double> ref_density;    // DensityMatch: canonical intensities along the orbit
    std::vector<double> ref_direction;  // DirectionMatch: canonical gradient directions along the orbit
};

struct BankConfig {
    std::size_t min_orbit_len = 8;
    std::size_t max_orbit_len = 0;  // 0 -> 4 * (width + height)
    double eps_stationary = 1e-9;
};

/// Feature bank extracted from one canonical image. Orbits come from the
/// Hamiltonian flow in deterministic seeding order; index-eligible closed
/// orbits (>= 4 points, nondegenerate polygon) are stored positively
/// oriented. Template count = 2 * #orbits + 2 * #eligible closed orbits.
struct FeatureBank {
    ScalarField canonical;
    BankConfig config;
    std::vector<Orbit> orbits;
    std::vector<FeatureTemplate> templates;

    const Orbit& orbit_of(const FeatureTemplate& t) const { return orbits[t.orbit_id]; }
};

/// Phase I of the framework: derive the two systems of the canonical image,
/// extract all Hamiltonian orbits, and emit per orbit a DensityMatch and a
/// DirectionMatch template plus, for each index-eligible closed orbit, a
/// PoincareIndex and a ConleyIndex template. Throws DataError when the
/// canonical yields no orbits.
FeatureBank build_feature_bank(const ScalarField& canonical, const BankConfig& config = {});

/// Per-image working data for template evaluation: the image's
/// negative-gradient system and its direction field, computed once and
/// shared across all templates.
struct EvalContext {
    VectorField neg_grad;
    DirectionField direction;
};

EvalContext make_eval_context(const ScalarField& img, double eps_stationary);

/// || ref_density - img restricted to the orbit ||_2.
double eval_density(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img);

/// L2 norm of per-point angular differences between ref_direction and the
/// image's gradient direction along the orbit. Stationary image pixels
/// contribute the maximal per-point distance pi.
double eval_direction(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx,
                      DirectionMode mode = DirectionMode::Wrapped);
double eval_direction(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img,
                      DirectionMode mode = DirectionMode::Wrapped);

/// Poincare index of the canonical orbit evaluated in the image's
/// negative-gradient direction field; stationary pixels step zero.
double eval_poincare(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx);
double eval_poincare(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img);

/// Continuous pseudo Conley index of the canonical orbit against the
/// image's negative-gradient vector field.
double eval_conley(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx);
double eval_conley(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img);

/// Images x features value table plus aligned labels (face = 1, non-face = 0).
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major
    std::vector<int> labels;

    double at(std::size_t row, std::size_t col) const { return data[row * cols + col]; }
    const double* row_ptr(std::size_t row) const { return data.data() + row * cols; }
};

/// A bank of feature columns the trainer can evaluate on an image. Both the
/// streamline bank and the Haar bank implement it, so their matrices plug
/// into the same trainer and can be concatenated.
class ColumnProvider {
  public:
    virtual ~ColumnProvider() = default;
    virtual std::size_t columns() const = 0;
    virtual int image_width() const = 0;
    virtual int image_height() const = 0;
    virtual std::string column_name(std::size_t j) const = 0;
    virtual std::string column_kind(std::size_t j) const = 0;
    /// Fills out[0..columns) with the feature values of img.
    virtual void evaluate_row(const ScalarField& img, double* out) const = 0;
    /// Fills out[i] with column indices[i] of img.
    virtual void evaluate_selected(const ScalarField& img, const std::vector<std::size_t>& indices,
                                   double* out) const = 0;
};

class StreamlineColumns : public ColumnProvider {
  public:
    StreamlineColumns(const FeatureBank& bank, DirectionMode mode);
    std::size_t columns() const override;
    int image_width() const override;
    int image_height() const override;
    std::string column_name(std::size_t j) const override;
    std::string column_kind(std::size_t j) const override;
    void evaluate_row(const ScalarField& img, double* out) const override;
    void evaluate_selected(const ScalarField& img, const std::vector<std::size_t>& indices,
                           double* out) const override;

  private:
    const FeatureBank* bank_;
    DirectionMode mode_;
};

/// Column concatenation, for the joint streamline + Haar experiments.
class ConcatColumns : public ColumnProvider {
  public:
    explicit ConcatColumns(std::vector<const ColumnProvider*> parts);
    std::size_t columns() const override;
    int image_width() const override;
    int image_height() const override;
    std::string column_name(std::size_t j) const override;
    std::string column_kind(std::size_t j) const override;
    void evaluate_row(const ScalarField& img, double* out) const override;
    void evaluate_selected(const ScalarField& img, const std::vector<std::size_t>& indices,
                           double* out) const override;

  private:
    std::vector<const ColumnProvider*> parts_;
    std::vector<std::size_t> offsets_;
};

/// Row i, column j = evaluation of column j on image i. Parallelizes over
/// images with deterministic output placement; a dimension mismatch is
/// reported with the offending image index.
FeatureMatrix feature_matrix(const ColumnProvider& provider, const std::vector<ScalarField>& imgs,
                             const std::vector<int>& labels, unsigned threads = 0);

/// Streamline-bank convenience wrapper.
FeatureMatrix feature_matrix(const FeatureBank& bank, const std::vector<ScalarField>& imgs,
                             const std::vector<int>& labels,
                             DirectionMode mode = DirectionMode::Wrapped, unsigned threads = 0);

}  // namespace hamflow
