#pragma once

#include <vector>

namespace mkdv {

struct PiiConfig {
    /// Output grid spacing; the profile is stored on s_max, s_max - ds, ..., s_min.
    double ds = 0.005;
    /// The seed is tiny at s_max, so the control is essentially relative.
    double abs_tol = 1e-24;
    double rel_tol = 1e-12;
    /// |p| above this bound is reported as a blow-up.
    double blowup = 1e3;
};

/// Solution of p'' = s p + 2 p^3 with p ~ k Ai(s) as s -> +infinity, on a
/// descending uniform grid.
struct PainleveProfile {
    double k = 0.0;
    std::vector<double> sgrid;  // descending
    std::vector<double> p;
    std::vector<double> dp;
    /// sup over interior nodes of |p'' - s p - 2 p^3|, p'' by a five-point stencil.
    double residual_norm = 0.0;
    /// |p(s_max) - k Ai(s_max)|
    double seed_defect = 0.0;

    double s_max() const { return sgrid.front(); }
    double s_min() const { return sgrid.back(); }
    bool contains(double s) const { return !sgrid.empty() && s <= s_max() && s >= s_min(); }
    /// Hermite cubic interpolation from (p, p'); throws InputError outside the grid.
    double operator()(double s) const;
    /// Pointwise residual at interior node i (2 <= i < size - 2).
    double residual_at(std::size_t i) const;
};

/// Smallest s >= 2 (on a 0.25 lattice) with |k Ai(s')| < 1e-10 for s' >= s.
double pii_default_s_max(double k);

/// Integrates downward from s_max with dense-output Dormand-Prince 5(4) steps.
/// Throws InputError for |k| >= 1 or s_min >= s_max, NumericalError on blow-up
/// (the message carries the location).
PainleveProfile solve_pii(double k, double s_min, double s_max, const PiiConfig& cfg = {});

/// (3t)^{-1/3} p(x / (3t)^{1/3}); throws InputError when the argument is outside the grid.
double similarity_eval(double x, double t, const PainleveProfile& profile);

/// The similarity variable x / (3t)^{1/3}.
/// Like similarity_eval, but beyond s_max continues with the seed k Ai(s).
double similarity_eval_tail(double x, double t, const PainleveProfile& profile);

double similarity_variable(double x, double t);

}  // namespace mkdv
