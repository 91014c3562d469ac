#include "hamflow/features.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hamflow/error.hpp"
#include "hamflow/parallel.hpp"

namespace hamflow {

const char* to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::DensityMatch: return "density_match";
        case FeatureKind::DirectionMatch: return "direction_match";
        case FeatureKind::PoincareIndex: return "poincare_index";
        case FeatureKind::ConleyIndex: return "conley_index";
    }
    return "?";
}

namespace {

void check_shape(const FeatureBank& bank, int width, int height) {
    if (width != bank.canonical.width || height != bank.canonical.height) {
        throw DataError("image is " + std::to_string(width) + "x" + std::to_string(height) +
                        ", bank expects " + std::to_string(bank.canonical.width) + "x" +
                        std::to_string(bank.canonical.height));
    }
}

bool index_eligible(const Orbit& orbit) {
    return orbit.closed && orbit.points.size() >= 4;
}

}  // namespace

FeatureBank build_feature_bank(const ScalarField& canonical, const BankConfig& config) {
    validate(canonical, "canonical image");

    FeatureBank bank;
    bank.canonical = canonical;
    bank.config = config;

    const SystemPair systems = derive_systems(canonical);
    const DirectionField ham_dir = normalize(systems.hamiltonian, config.eps_stationary);
    const DirectionField grad_dir = normalize(systems.neg_grad, config.eps_stationary);

    bank.orbits = extract_all_orbits(ham_dir, config.min_orbit_len, config.max_orbit_len,
                                     &canonical);
    if (bank.orbits.empty()) {
        throw DataError("canonical image yields no orbits (constant or near-constant landscape)");
    }

    for (int id = 0; id < static_cast<int>(bank.orbits.size()); ++id) {
        Orbit& orbit = bank.orbits[id];
        bool eligible = index_eligible(orbit);
        if (eligible) {
            try {
                orbit = orient_positive(orbit);
            } catch (const NumericError&) {
                eligible = false;  // degenerate polygon: keep the match features only
            }
        }

        FeatureTemplate density{FeatureKind::DensityMatch, id, {}, {}};
        FeatureTemplate direction{FeatureKind::DirectionMatch, id, {}, {}};
        density.ref_density.reserve(orbit.points.size());
        direction.ref_direction.reserve(orbit.points.size());
        for (const LatticePoint& p : orbit.points) {
            density.ref_density.push_back(canonical.at(p.col, p.row));
            direction.ref_direction.push_back(grad_dir.angle_at(p.col, p.row));
        }
        bank.templates.push_back(std::move(density));
        bank.templates.push_back(std::move(direction));
        if (eligible) {
            bank.templates.push_back({FeatureKind::PoincareIndex, id, {}, {}});
            bank.templates.push_back({FeatureKind::ConleyIndex, id, {}, {}});
        }
    }
    return bank;
}

EvalContext make_eval_context(const ScalarField& img, double eps_stationary) {
    SystemPair systems = derive_systems(img);
    EvalContext ctx;
    ctx.direction = normalize(systems.neg_grad, eps_stationary);
    ctx.neg_grad = std::move(systems.neg_grad);
    return ctx;
}

double eval_density(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img) {
    if (t.kind != FeatureKind::DensityMatch) {
        throw std::invalid_argument("eval_density: wrong template kind");
    }
    check_shape(bank, img.width, img.height);
    const Orbit& orbit = bank.orbit_of(t);
    double sum = 0.0;
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
        const LatticePoint& p = orbit.points[k];
        const double d = t.ref_density[k] - img.at(p.col, p.row);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double eval_direction(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx,
                      DirectionMode mode) {
    if (t.kind != FeatureKind::DirectionMatch) {
        throw std::invalid_argument("eval_direction: wrong template kind");
    }
    check_shape(bank, ctx.direction.width, ctx.direction.height);
    constexpr double pi = std::numbers::pi;
    const Orbit& orbit = bank.orbit_of(t);
    double sum = 0.0;
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
        const LatticePoint& p = orbit.points[k];
        double d;
        if (ctx.direction.stationary(p.col, p.row)) {
            d = pi;  // maximal per-point distance for a degenerate pixel
        } else {
            d = t.ref_direction[k] - ctx.direction.angle_at(p.col, p.row);
            if (mode == DirectionMode::Wrapped) {
                d = std::fabs(d);
                if (d > pi) d = 2.0 * pi - d;
            }
        }
        sum += d * d;
    }
    return std::sqrt(sum);
}

double eval_direction(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img,
                      DirectionMode mode) {
    return eval_direction(bank, t, make_eval_context(img, bank.config.eps_stationary), mode);
}

double eval_poincare(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx) {
    if (t.kind != FeatureKind::PoincareIndex) {
        throw std::invalid_argument("eval_poincare: wrong template kind");
    }
    check_shape(bank, ctx.direction.width, ctx.direction.height);
    return poincare_index(bank.orbit_of(t), ctx.direction, StationaryPolicy::ZeroStep);
}

double eval_poincare(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img) {
    return eval_poincare(bank, t, make_eval_context(img, bank.config.eps_stationary));
}

double eval_conley(const FeatureBank& bank, const FeatureTemplate& t, const EvalContext& ctx) {
    if (t.kind != FeatureKind::ConleyIndex) {
        throw std::invalid_argument("eval_conley: wrong template kind");
    }
    check_shape(bank, ctx.neg_grad.width, ctx.neg_grad.height);
    return continuous_conley(boundary_flow(bank.orbit_of(t), ctx.neg_grad));
}

double eval_conley(const FeatureBank& bank, const FeatureTemplate& t, const ScalarField& img) {
    return eval_conley(bank, t, make_eval_context(img, bank.config.eps_stationary));
}

// -- column provider over the streamline bank ---------------------------

StreamlineColumns::StreamlineColumns(const FeatureBank& bank, DirectionMode mode)
    : bank_(&bank), mode_(mode) {}

std::size_t StreamlineColumns::columns() const { return bank_->templates.size(); }
int StreamlineColumns::image_width() const { return bank_->canonical.width; }
int StreamlineColumns::image_height() const { return bank_->canonical.height; }

std::string StreamlineColumns::column_name(std::size_t j) const {
    const FeatureTemplate& t = bank_->templates[j];
    return "f" + std::to_string(j) + "_o" + std::to_string(t.orbit_id) + "_" +
           to_string(t.kind);
}

std::string StreamlineColumns::column_kind(std::size_t j) const {
    return to_string(bank_->templates[j].kind);
}

void StreamlineColumns::evaluate_row(const ScalarField& img, double* out) const {
    const EvalContext ctx = make_eval_context(img, bank_->config.eps_stationary);
    for (std::size_t j = 0; j < bank_->templates.size(); ++j) {
        const FeatureTemplate& t = bank_->templates[j];
        switch (t.kind) {
            case FeatureKind::DensityMatch: out[j] = eval_density(*bank_, t, img); break;
            case FeatureKind::DirectionMatch: out[j] = eval_direction(*bank_, t, ctx, mode_); break;
            case FeatureKind::PoincareIndex: out[j] = eval_poincare(*bank_, t, ctx); break;
            case FeatureKind::ConleyIndex: out[j] = eval_conley(*bank_, t, ctx); break;
        }
    }
}

void StreamlineColumns::evaluate_selected(const ScalarField& img,
                                          const std::vector<std::size_t>& indices,
                                          double* out) const {
    const EvalContext ctx = make_eval_context(img, bank_->config.eps_stationary);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const FeatureTemplate& t = bank_->templates.at(indices[i]);
        switch (t.kind) {
            case FeatureKind::DensityMatch: out[i] = eval_density(*bank_, t, img); break;
            case FeatureKind::DirectionMatch: out[i] = eval_direction(*bank_, t, ctx, mode_); break;
            case FeatureKind::PoincareIndex: out[i] = eval_poincare(*bank_, t, ctx); break;
            case FeatureKind::ConleyIndex: out[i] = eval_conley(*bank_, t, ctx); break;
        }
    }
}

// -- concatenation -------------------------------------------------------

ConcatColumns::ConcatColumns(std::vector<const ColumnProvider*> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw std::invalid_argument("ConcatColumns: no parts");
    }
    offsets_.resize(parts_.size() + 1, 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i]->image_width() != parts_[0]->image_width() ||
            parts_[i]->image_height() != parts_[0]->image_height()) {
            throw DataError("ConcatColumns: parts expect different image dimensions");
        }
        offsets_[i + 1] = offsets_[i] + parts_[i]->columns();
    }
}

std::size_t ConcatColumns::columns() const { return offsets_.back(); }
int ConcatColumns::image_width() const { return parts_[0]->image_width(); }
int ConcatColumns::image_height() const { return parts_[0]->image_height(); }

std::string ConcatColumns::column_name(std::size_t j) const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (j < offsets_[i + 1]) return parts_[i]->column_name(j - offsets_[i]);
    }
    throw std::out_of_range("ConcatColumns::column_name");
}

std::string ConcatColumns::column_kind(std::size_t j) const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (j < offsets_[i + 1]) return parts_[i]->column_kind(j - offsets_[i]);
    }
    throw std::out_of_range("ConcatColumns::column_kind");
}

void ConcatColumns::evaluate_row(const ScalarField& img, double* out) const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        parts_[i]->evaluate_row(img, out + offsets_[i]);
    }
}

void ConcatColumns::evaluate_selected(const ScalarField& img,
                                      const std::vector<std::size_t>& indices,
                                      double* out) const {
    // Split the request per part, preserving output positions.
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        std::vector<std::size_t> local;
        std::vector<std::size_t> slots;
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= offsets_[i] && indices[k] < offsets_[i + 1]) {
                local.push_back(indices[k] - offsets_[i]);
                slots.push_back(k);
            }
        }
        if (local.empty()) continue;
        std::vector<double> vals(local.size());
        parts_[i]->evaluate_selected(img, local, vals.data());
        for (std::size_t k = 0; k < slots.size(); ++k) {
            out[slots[k]] = vals[k];
        }
    }
}

// -- matrix --------------------------------------------------------------

FeatureMatrix feature_matrix(const ColumnProvider& provider, const std::vector<ScalarField>& imgs,
                             const std::vector<int>& labels, unsigned threads) {
    if (imgs.size() != labels.size()) {
        throw std::invalid_argument("feature_matrix: labels misaligned with images");
    }
    for (std::size_t i = 0; i < imgs.size(); ++i) {
        if (imgs[i].width != provider.image_width() || imgs[i].height != provider.image_height()) {
            throw DataError("image " + std::to_string(i) + " is " + std::to_string(imgs[i].width) +
                            "x" + std::to_string(imgs[i].height) + ", expected " +
                            std::to_string(provider.image_width()) + "x" +
                            std::to_string(provider.image_height()));
        }
    }

    FeatureMatrix m;
    m.rows = imgs.size();
    m.cols = provider.columns();
    m.labels = labels;
    m.data.resize(m.rows * m.cols);
    parallel_chunks(m.rows, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            provider.evaluate_row(imgs[i], m.data.data() + i * m.cols);
        }
    });
    return m;
}

FeatureMatrix feature_matrix(const FeatureBank& bank, const std::vector<ScalarField>& imgs,
                             const std::vector<int>& labels, DirectionMode mode, unsigned threads) {
    const StreamlineColumns cols(bank, mode);
    return feature_matrix(cols, imgs, labels, threads);
}

}  // namespace hamflow
