#include "mkdv/cauchy.hpp"

#include "mkdv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mkdv {
namespace {

constexpr std::size_t kP = PanelGrid::kOrder;
// Panels whose normalized distance |zeta| to a target is below this radius
// get interpolant-exact weights; beyond it the plain Gauss rule is accurate
// to ~rho^{-16} with rho = R + sqrt(R^2 - 1) ~ 6.9.
constexpr double kNearRadius = 3.5;

template <unsigned N>
void full_gauss_rule(std::array<double, N>& x, std::array<double, N>& w) {
    using Rule = boost::math::quadrature::gauss<double, N>;
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    // Boost stores the non-negative half; N is even here.
    static_assert(N % 2 == 0);
    for (unsigned k = 0; k < N / 2; ++k) {
        x[N / 2 + k] = a[k];
        w[N / 2 + k] = wt[k];
        x[N / 2 - 1 - k] = -a[k];
        w[N / 2 - 1 - k] = wt[k];
    }
}

struct FineRule {
    std::array<double, 32> x;
    std::array<double, 32> w;
    FineRule() { full_gauss_rule<32>(x, w); }
};

const FineRule& fine_rule() {
    static const FineRule rule;
    return rule;
}

/// Lagrange basis values at u (barycentric form).
void lagrange_basis(const ReferencePanel& ref, double u, std::array<double, kP>& ell) {
    double denom = 0.0;
    for (std::size_t k = 0; k < kP; ++k) {
        const double d = u - ref.nodes[k];
        if (d == 0.0) {
            ell.fill(0.0);
            ell[k] = 1.0;
            return;
        }
        ell[k] = ref.bary[k] / d;
        denom += ell[k];
    }
    for (auto& v : ell) v /= denom;
}

void accumulate_outside(const ReferencePanel& ref, double zeta, double lo, double hi,
                        std::array<double, kP>& out, int depth) {
    const double len = hi - lo;
    const double dist = zeta > hi ? zeta - hi : lo - zeta;
    if (dist < len && depth < 60) {
        const double mid = 0.5 * (lo + hi);
        accumulate_outside(ref, zeta, lo, mid, out, depth + 1);
        accumulate_outside(ref, zeta, mid, hi, out, depth + 1);
        return;
    }
    const FineRule& fr = fine_rule();
    const double c = 0.5 * (lo + hi);
    const double hl = 0.5 * len;
    std::array<double, kP> ell;
    for (std::size_t q = 0; q < fr.x.size(); ++q) {
        const double u = c + hl * fr.x[q];
        const double k = fr.w[q] * hl / (u - zeta);
        lagrange_basis(ref, u, ell);
        for (std::size_t j = 0; j < kP; ++j) out[j] += k * ell[j];
    }
}

struct NodeWeightTable {
    std::array<std::array<double, kP>, kP> rows;
    NodeWeightTable() {
        const ReferencePanel& ref = ReferencePanel::get();
        const auto& u = ref.nodes;
        const auto& w = ref.weights;
        const auto& lam = ref.bary;
        for (std::size_t i = 0; i < kP; ++i) {
            // p.v. integral P(u)/(u - u_i) = sum_k w_k q(u_k) + P(u_i) log((1-u_i)/(1+u_i)),
            // q(u) = (P(u) - P(u_i))/(u - u_i), exact for degree kP-2 by Gauss.
            std::array<double, kP> d{};
            double dii = 0.0;
            for (std::size_t j = 0; j < kP; ++j) {
                if (j == i) continue;
                d[j] = (lam[j] / lam[i]) / (u[i] - u[j]);
                dii -= d[j];
            }
            d[i] = dii;
            auto& row = rows[i];
            double self = std::log((1.0 - u[i]) / (1.0 + u[i]));
            for (std::size_t j = 0; j < kP; ++j) {
                row[j] = w[i] * d[j];
                if (j != i) {
                    const double inv = w[j] / (u[j] - u[i]);
                    row[j] += inv;
                    self -= inv;
                }
            }
            row[i] += self;
        }
    }
};

}  // namespace

const ReferencePanel& ReferencePanel::get() {
    static const ReferencePanel ref = [] {
        ReferencePanel r{};
        full_gauss_rule<kP>(r.nodes, r.weights);
        for (std::size_t j = 0; j < kP; ++j) {
            const double s = (j % 2 == 0) ? 1.0 : -1.0;
            r.bary[j] = s * std::sqrt((1.0 - r.nodes[j] * r.nodes[j]) * r.weights[j]);
        }
        return r;
    }();
    return ref;
}

std::array<double, kP> cauchy_weights_outside(double zeta) {
    if (std::abs(zeta) <= 1.0) throw InputError("cauchy_weights_outside: zeta must lie outside [-1, 1]");
    std::array<double, kP> out{};
    accumulate_outside(ReferencePanel::get(), zeta, -1.0, 1.0, out, 0);
    return out;
}

std::array<double, kP> cauchy_weights_at_node(std::size_t i) {
    static const NodeWeightTable table;
    return table.rows.at(i);
}

PanelGrid::PanelGrid(std::vector<double> breakpoints) : breaks_(std::move(breakpoints)) {
    if (breaks_.size() < 2) throw InputError("panel grid needs at least two breakpoints");
    for (std::size_t p = 1; p < breaks_.size(); ++p) {
        if (!(breaks_[p] > breaks_[p - 1])) throw InputError("panel breakpoints must increase strictly");
    }
    const ReferencePanel& ref = ReferencePanel::get();
    nodes_.reserve(panel_count() * kP);
    weights_.reserve(panel_count() * kP);
    for (std::size_t p = 0; p < panel_count(); ++p) {
        const double c = 0.5 * (breaks_[p] + breaks_[p + 1]);
        const double hl = 0.5 * (breaks_[p + 1] - breaks_[p]);
        for (std::size_t j = 0; j < kP; ++j) {
            nodes_.push_back(c + hl * ref.nodes[j]);
            weights_.push_back(hl * ref.weights[j]);
        }
    }
}

double PanelGrid::max_node_gap(std::size_t p) const {
    double g = 0.0;
    for (std::size_t j = p * kP + 1; j < (p + 1) * kP; ++j) g = std::max(g, nodes_[j] - nodes_[j - 1]);
    return g;
}

CauchyOperator::CauchyOperator(const PanelGrid& grid, bool use_tree) : grid_(grid) {
    const std::size_t n = grid_.size();
    const std::size_t np = grid_.panel_count();
    near_.resize(n);
    auto normalized = [&](std::size_t p, double z) {
        const double c = 0.5 * (grid_.panel_start(p) + grid_.panel_end(p));
        const double hl = 0.5 * (grid_.panel_end(p) - grid_.panel_start(p));
        return (z - c) / hl;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t q = grid_.panel_of(i);
        const double z = grid_.nodes()[i];
        std::size_t lo = q, hi = q;
        // Scan outward; stop after a run of distant panels.
        for (std::size_t p = q, misses = 0; p-- > 0 && misses < 8;) {
            if (std::abs(normalized(p, z)) < kNearRadius) {
                lo = p;
                misses = 0;
            } else {
                ++misses;
            }
        }
        for (std::size_t p = q + 1, misses = 0; p < np && misses < 8; ++p) {
            if (std::abs(normalized(p, z)) < kNearRadius) {
                hi = p;
                misses = 0;
            } else {
                ++misses;
            }
        }
        near_[i] = {lo, hi, near_weights_.size()};
        for (std::size_t p = lo; p <= hi; ++p) {
            const auto w = (p == q) ? cauchy_weights_at_node(i - q * kP) : cauchy_weights_outside(normalized(p, z));
            near_weights_.insert(near_weights_.end(), w.begin(), w.end());
        }
    }
    if (use_tree && n > kTreeThreshold) build_tree(0, static_cast<Eigen::Index>(n));
}

void CauchyOperator::apply_columns(const Eigen::ArrayXXd& raw, Eigen::ArrayXXd& out) const {
    const std::size_t n = grid_.size();
    const auto nn = static_cast<Eigen::Index>(n);
    const Eigen::Index cols = raw.cols();
    const Eigen::Map<const Eigen::ArrayXd> s(grid_.nodes().data(), nn);
    const Eigen::Map<const Eigen::ArrayXd> w(grid_.weights().data(), nn);
    const Eigen::ArrayXXd wd = raw.colwise() * w;
    out.setZero(nn, cols);

    std::vector<Eigen::MatrixXd> charges;
    if (!boxes_.empty()) {
        charges.resize(boxes_.size());
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            const Box& bx = boxes_[b];
            charges[b] = box_interp_[b].transpose() * wd.matrix().middleRows(bx.begin, bx.end - bx.begin);
        }
    }
    std::vector<int> stack;
    for (Eigen::Index i = 0; i < nn; ++i) {
        const Near& nr = near_[static_cast<std::size_t>(i)];
        const double zi = s(i);
        const auto j0 = static_cast<Eigen::Index>(nr.first_panel * kP);
        const auto j1 = static_cast<Eigen::Index>((nr.last_panel + 1) * kP);
        auto direct = [&](Eigen::Index b, Eigen::Index e) {
            for (Eigen::Index j = b; j < e; ++j) {
                const double k = 1.0 / (s(j) - zi);
                for (Eigen::Index c = 0; c < cols; ++c) out(i, c) += k * wd(j, c);
            }
        };
        if (boxes_.empty()) {
            direct(0, j0);
            direct(j1, nn);
        } else {
            stack.assign(1, 0);
            while (!stack.empty()) {
                const int b = stack.back();
                stack.pop_back();
                const Box& bx = boxes_[static_cast<std::size_t>(b)];
                const double mid = 0.5 * (bx.lo + bx.hi), hw = 0.5 * (bx.hi - bx.lo);
                const bool disjoint = bx.end <= j0 || bx.begin >= j1;
                if (disjoint && std::abs(zi - mid) >= kNearRadius * hw) {
                    const Eigen::ArrayXd k = (box_proxy_[static_cast<std::size_t>(b)] - zi).inverse();
                    for (Eigen::Index c = 0; c < cols; ++c)
                        out(i, c) += (k * charges[static_cast<std::size_t>(b)].col(c).array()).sum();
                } else if (bx.left < 0) {
                    direct(bx.begin, std::min(bx.end, j0));
                    direct(std::max(bx.begin, j1), bx.end);
                } else {
                    stack.push_back(bx.right);
                    stack.push_back(bx.left);
                }
            }
        }
        const double* nw = near_weights_.data() + nr.offset;
        for (Eigen::Index j = j0; j < j1; ++j, ++nw) {
            for (Eigen::Index c = 0; c < cols; ++c) out(i, c) += *nw * raw(j, c);
        }
    }
}

int CauchyOperator::build_tree(Eigen::Index begin, Eigen::Index end) {
    constexpr Eigen::Index kLeaf = 64;
    constexpr int kProxy = 18;
    const auto s = grid_.nodes();
    const int id = static_cast<int>(boxes_.size());
    Box bx;
    bx.begin = begin;
    bx.end = end;
    bx.lo = s[static_cast<std::size_t>(begin)];
    bx.hi = s[static_cast<std::size_t>(end - 1)];
    boxes_.push_back(bx);

    // Chebyshev points of the first kind on [lo, hi] and Lagrange weights of each node.
    const double mid = 0.5 * (bx.lo + bx.hi), hw = 0.5 * (bx.hi - bx.lo);
    Eigen::ArrayXd cp(kProxy), beta(kProxy);
    for (int k = 0; k < kProxy; ++k) {
        const double ang = std::numbers::pi * (2 * k + 1) / (2.0 * kProxy);
        cp(k) = mid + hw * std::cos(ang);
        beta(k) = ((k % 2) ? -1.0 : 1.0) * std::sin(ang);
    }
    Eigen::MatrixXd interp(end - begin, kProxy);
    for (Eigen::Index j = begin; j < end; ++j) {
        const double x = s[static_cast<std::size_t>(j)];
        Eigen::ArrayXd q = beta / (x - cp);
        int hit = -1;
        for (int k = 0; k < kProxy; ++k)
            if (x == cp(k)) hit = k;
        if (hit >= 0) {
            q.setZero();
            q(hit) = 1.0;
        } else {
            q /= q.sum();
        }
        interp.row(j - begin) = q.matrix().transpose();
    }
    box_interp_.push_back(std::move(interp));
    box_proxy_.push_back(cp);

    if (end - begin > kLeaf) {
        const Eigen::Index m = begin + (end - begin) / 2;
        const int l = build_tree(begin, m);
        const int r = build_tree(m, end);
        boxes_[static_cast<std::size_t>(id)].left = l;
        boxes_[static_cast<std::size_t>(id)].right = r;
    }
    return id;
}

void CauchyOperator::apply_pv(std::span<const cdouble> f, std::span<cdouble> out) const {
    const std::size_t n = grid_.size();
    if (f.size() != n || out.size() != n) throw InputError("Cauchy operator: density size mismatch");
    Eigen::ArrayXXd raw(static_cast<Eigen::Index>(n), 2), res;
    for (std::size_t j = 0; j < n; ++j) {
        raw(static_cast<Eigen::Index>(j), 0) = f[j].real();
        raw(static_cast<Eigen::Index>(j), 1) = f[j].imag();
    }
    apply_columns(raw, res);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = cdouble(res(static_cast<Eigen::Index>(j), 0), res(static_cast<Eigen::Index>(j), 1));
}

void CauchyOperator::apply_pv2(std::span<const cdouble> f, std::span<const cdouble> g, std::span<cdouble> out_f,
                               std::span<cdouble> out_g) const {
    const std::size_t n = grid_.size();
    if (f.size() != n || g.size() != n || out_f.size() != n || out_g.size() != n) {
        throw InputError("Cauchy operator: density size mismatch");
    }
    Eigen::ArrayXXd raw(static_cast<Eigen::Index>(n), 4), res;
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        raw(jj, 0) = f[j].real();
        raw(jj, 1) = f[j].imag();
        raw(jj, 2) = g[j].real();
        raw(jj, 3) = g[j].imag();
    }
    apply_columns(raw, res);
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        out_f[j] = cdouble(res(jj, 0), res(jj, 1));
        out_g[j] = cdouble(res(jj, 2), res(jj, 3));
    }
}

void CauchyOperator::apply_plus(std::span<const cdouble> f, std::span<cdouble> out) const {
    apply_pv(f, out);
    const cdouble inv(0.0, -0.5 / std::numbers::pi);  // 1/(2 pi i)
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = 0.5 * f[i] + inv * out[i];
}

void CauchyOperator::apply_minus(std::span<const cdouble> f, std::span<cdouble> out) const {
    apply_pv(f, out);
    const cdouble inv(0.0, -0.5 / std::numbers::pi);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = -0.5 * f[i] + inv * out[i];
}

Eigen::MatrixXd CauchyOperator::dense_pv() const {
    const std::size_t n = grid_.size();
    const auto s = grid_.nodes();
    const auto w = grid_.weights();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Near& nr = near_[i];
        const std::size_t j0 = nr.first_panel * kP;
        const std::size_t j1 = (nr.last_panel + 1) * kP;
        for (std::size_t j = 0; j < n; ++j) {
            if (j >= j0 && j < j1) {
                m(i, j) = near_weights_[nr.offset + (j - j0)];
            } else {
                m(i, j) = w[j] / (s[j] - s[i]);
            }
        }
    }
    return m;
}

cdouble CauchyOperator::integral_off_support(std::span<const cdouble> f, double z) const {
    const auto b = grid_.breakpoints();
    if (z > b.front() && z < b.back()) throw InputError("integral_off_support: z lies inside the grid support");
    const auto s = grid_.nodes();
    const auto w = grid_.weights();
    cdouble acc = 0.0;
    for (std::size_t p = 0; p < grid_.panel_count(); ++p) {
        const double c = 0.5 * (grid_.panel_start(p) + grid_.panel_end(p));
        const double hl = 0.5 * (grid_.panel_end(p) - grid_.panel_start(p));
        const double zeta = (z - c) / hl;
        if (std::abs(zeta) < kNearRadius) {
            if (std::abs(zeta) <= 1.0) throw InputError("integral_off_support: z on a panel endpoint");
            const auto wt = cauchy_weights_outside(zeta);
            for (std::size_t j = 0; j < kP; ++j) acc += wt[j] * f[p * kP + j];
        } else {
            for (std::size_t j = p * kP; j < (p + 1) * kP; ++j) acc += w[j] * f[j] / (s[j] - z);
        }
    }
    return acc;
}

}  // namespace mkdv
