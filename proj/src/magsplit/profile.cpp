#include "magsplit/profile.hpp"

#include "magsplit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magsplit {

namespace {

const int kPrefixCells = 512;
const int kPrefixOrder = 15;

std::string join_errors(const std::vector<std::string>& errs)
{
    std::string out = "invalid magnetic profile:";
    for (const auto& e : errs) out += "\n  - " + e;
    return out;
}

} // namespace

MagneticProfile MagneticProfile::builtin(double b0, double b1, double a, double kappa)
{
    MagneticProfile p;
    p.kind_ = Kind::builtin;
    p.b0_ = b0;
    p.b1_ = b1;
    p.a_ = a;
    p.kappa_ = kappa;
    p.validate_and_finish();
    return p;
}

MagneticProfile MagneticProfile::tabulated(double b0, double b1, double a,
                                           std::vector<std::pair<double, double>> samples)
{
    MagneticProfile p;
    p.kind_ = Kind::tabulated;
    p.b0_ = b0;
    p.b1_ = b1;
    p.a_ = a;
    std::sort(samples.begin(), samples.end());
    std::vector<std::string> errs;
    if (samples.size() < 4) errs.push_back("profile table needs at least 4 samples");
    for (auto& s : samples) {
        p.tab_u_.push_back(s.first);
        p.tab_b_.push_back(s.second);
    }
    const size_t n = p.tab_u_.size();
    if (n >= 2) {
        if (p.tab_u_.front() != 0.0) errs.push_back("profile table must start at u = 0");
        if (p.tab_u_.back() < p.u_a()) errs.push_back("profile table must reach u = a^2/2");
        if (std::fabs(p.tab_b_.front() - b0) > 1e-12 * std::max(1.0, std::fabs(b0)))
            errs.push_back("table beta(0) differs from b0");
        for (size_t i = 0; i + 1 < n; ++i) {
            if (p.tab_u_[i + 1] <= p.tab_u_[i]) errs.push_back("table abscissae not increasing");
            if (p.tab_b_[i + 1] < p.tab_b_[i] && p.tab_u_[i + 1] <= p.u_a())
                errs.push_back("table beta not non-decreasing on [0, a^2/2]");
        }
        for (size_t i = 0; i < n; ++i) {
            if (p.tab_b_[i] < b0 - 1e-12 || p.tab_b_[i] > b1 + 1e-12)
                errs.push_back("table beta leaves [b0, b1]");
            if (p.tab_u_[i] >= p.u_a() && std::fabs(p.tab_b_[i] - b1) > 1e-12)
                errs.push_back("table beta != b1 beyond u = a^2/2");
        }
    }
    if (!errs.empty()) throw std::invalid_argument(join_errors(errs));

    // Fritsch-Carlson monotone cubic slopes
    p.tab_d_.assign(n, 0.0);
    std::vector<double> h(n - 1), del(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = p.tab_u_[i + 1] - p.tab_u_[i];
        del[i] = (p.tab_b_[i + 1] - p.tab_b_[i]) / h[i];
    }
    p.tab_d_[0] = del[0];
    p.tab_d_[n - 1] = del[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            p.tab_d_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            p.tab_d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    p.validate_and_finish();
    return p;
}

void MagneticProfile::validate_and_finish()
{
    std::vector<std::string> errs;
    if (!(b0_ > 0)) errs.push_back("b0 must be positive");
    if (!(b1_ > b0_)) errs.push_back("b1 must exceed b0");
    if (!(a_ > 0)) errs.push_back("well radius a must be positive");
    if (kind_ == Kind::builtin && !(kappa_ > 0)) errs.push_back("kappa must be positive");
    if (!errs.empty()) throw std::invalid_argument(join_errors(errs));

    // per-cell Gauss prefix of int beta over [0, u_a]
    cells_ = kPrefixCells;
    cell_prefix_.assign(cells_ + 1, 0.0);
    const GLRule& rule = gl_rule(kPrefixOrder);
    const double ua = u_a();
    const double w = ua / cells_;
    double acc = 0.0;
    for (int c = 0; c < cells_; ++c) {
        double lo = c * w;
        double s = 0.0;
        for (int j = 0; j < kPrefixOrder; ++j) {
            double u = lo + 0.5 * w * (1.0 + rule.x[j]);
            s += rule.w[j] * beta_unchecked(u);
        }
        acc += 0.5 * w * s;
        cell_prefix_[c + 1] = acc;
    }
    // M by adaptive quadrature of beta - b1, abs tol 1e-13
    auto res = integrate_gk([this](double u) { return beta_unchecked(u) - b1_; }, 0.0, ua,
                            1e-13, 1e-14);
    flux_m_ = res.value;
    if (flux_m_ > 0.0) flux_m_ = 0.0;
}

double MagneticProfile::beta_unchecked(double u) const
{
    const double ua = u_a();
    if (u >= ua) return b1_;
    if (kind_ == Kind::builtin) {
        return b1_ - (b1_ - b0_) * std::exp(-kappa_ * u / (ua - u));
    }
    // PCHIP evaluation
    auto it = std::upper_bound(tab_u_.begin(), tab_u_.end(), u);
    size_t i = (it == tab_u_.begin()) ? 0 : static_cast<size_t>(it - tab_u_.begin()) - 1;
    if (i + 1 >= tab_u_.size()) return b1_;
    double hl = tab_u_[i + 1] - tab_u_[i];
    double t = (u - tab_u_[i]) / hl;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * tab_b_[i] + h10 * hl * tab_d_[i] + h01 * tab_b_[i + 1] + h11 * hl * tab_d_[i + 1];
}

double MagneticProfile::beta(double u) const
{
    if (u < 0.0) throw std::domain_error("beta: negative argument");
    return beta_unchecked(u);
}

double MagneticProfile::beta_prime0() const
{
    if (kind_ == Kind::builtin) return (b1_ - b0_) * kappa_ / u_a();
    return tab_d_[0];
}

double MagneticProfile::cumulative_beta(double u) const
{
    if (u < 0.0) throw std::domain_error("cumulative_beta: negative argument");
    const double ua = u_a();
    if (u >= ua) return flux_m_ + b1_ * u;
    const double w = ua / cells_;
    int c = std::min(static_cast<int>(u / w), cells_ - 1);
    double lo = c * w;
    const GLRule& rule = gl_rule(kPrefixOrder);
    double s = 0.0;
    double half = 0.5 * (u - lo);
    for (int j = 0; j < kPrefixOrder; ++j) {
        double uu = lo + half * (1.0 + rule.x[j]);
        s += rule.w[j] * beta_unchecked(uu);
    }
    return cell_prefix_[c] + half * s;
}

double MagneticProfile::alpha(double r) const
{
    if (r < 0.0) throw std::domain_error("alpha: negative radius");
    if (r >= a_) return flux_m_ + 0.5 * b1_ * r * r;
    return cumulative_beta(0.5 * r * r);
}

double MagneticProfile::flux_deficit_2d() const
{
    // (1/2pi) int (B_left - b1) over the plane: Cartesian tensor quadrature
    // over the bounding box of the well disc
    auto inner = [this](double x) {
        double ymax = std::sqrt(std::max(0.0, a_ * a_ - x * x));
        if (ymax == 0.0) return 0.0;
        auto res = integrate_gk(
            [this, x](double y) {
                double u = 0.5 * (x * x + y * y);
                return beta_unchecked(u) - b1_;
            },
            -ymax, ymax, 1e-13, 1e-13);
        return res.value;
    };
    auto res = integrate_gk(inner, -a_, a_, 5e-13, 1e-12, 2000);
    return res.value / (2.0 * M_PI);
}

BigFloat MagneticProfile::flux_deficit_big(int limbs) const
{
    if (kind_ == Kind::tabulated) return BigFloat(flux_m_, limbs);
    // composite Gauss-Legendre of beta - b1 = -(b1-b0) exp(-kappa u/(u_a-u))
    const int order = 32;
    const int panels = 48;
    const GLRuleBig& rule = gl_rule_big(order, limbs);
    const BigFloat ua(u_a(), limbs);
    const BigFloat w = ua.div_uint(panels);
    const BigFloat db(b1_ - b0_, limbs);
    const BigFloat kap(kappa_, limbs);
    BigFloat sum(limbs);
    for (int c = 0; c < panels; ++c) {
        BigFloat lo = w.mul_uint(c);
        BigFloat half = w.ldexp2(-1);
        for (int j = 0; j < order; ++j) {
            BigFloat u = lo + half * (BigFloat(1.0, limbs) + rule.x[j]);
            BigFloat g = exp(-(kap * u) / (ua - u));
            sum += rule.w[j] * half * g;
        }
    }
    return -(db * sum);
}

bool WellGeometry::theorem_hypothesis(double a) const
{
    return L > (2.0 + std::sqrt(6.0)) * a;
}

WellGeometry make_geometry(const MagneticProfile& p, double L)
{
    if (!(L > 0)) throw std::invalid_argument("well separation L must be positive");
    if (!(p.a() < 0.5 * L)) throw std::invalid_argument("well radius must satisfy a < L/2");
    return WellGeometry{L};
}

FluxData relative_flux(const MagneticProfile& p, const WellGeometry& g)
{
    FluxData f;
    f.M = p.flux_deficit();
    f.N = 8.0 * std::fabs(f.M) / (p.b1() * g.L * g.L);
    f.delta0 = (p.b1() - p.b0()) / (2.0 * p.b1());
    const double upper = p.a() * p.a() / (0.25 * g.L * g.L);
    if (!(f.N >= 0.0) || f.N >= upper || f.N >= 1.0)
        throw std::runtime_error("relative flux N outside [0, a^2/(L/2)^2)");
    return f;
}

double theta_on_axis(const MagneticProfile& p, const WellGeometry& g, double x2)
{
    if (x2 == 0.0) return 0.0;
    double t = std::fabs(x2);
    double v = 0.5 * p.b1() * g.L * t + 2.0 * p.flux_deficit() * std::atan(2.0 * t / g.L);
    return x2 < 0 ? -v : v;
}

BigFloat theta_on_axis_big(const BigFloat& M, double b1, double L, const BigFloat& x2)
{
    const int limbs = x2.limbs();
    if (x2.is_zero()) return BigFloat(limbs);
    BigFloat t = abs(x2);
    BigFloat v = BigFloat(0.5 * b1 * L, limbs) * t +
                 M.ldexp2(1) * atan(t.ldexp2(1) / BigFloat(L, limbs));
    return x2.is_negative() ? -v : v;
}

double k_on_axis(const MagneticProfile& p, const WellGeometry& g, double x2)
{
    if (x2 == 0.0) return 0.0;
    double t = std::fabs(x2);
    double v = p.b1() * t + 2.0 * p.flux_deficit() * t / (0.25 * g.L * g.L + t * t);
    return x2 < 0 ? -v : v;
}

BigFloat k_on_axis_big(const BigFloat& M, double b1, double L, const BigFloat& x2)
{
    const int limbs = x2.limbs();
    if (x2.is_zero()) return BigFloat(limbs);
    BigFloat t = abs(x2);
    BigFloat v = BigFloat(b1, limbs) * t +
                 (M.ldexp2(1) * t) / (BigFloat(0.25 * L * L, limbs) + t * t);
    return x2.is_negative() ? -v : v;
}

double field_2d(const MagneticProfile& p, const WellGeometry& g, Vec2 x)
{
    const double dl_x = x.x + 0.5 * g.L;
    const double dr_x = 0.5 * g.L - x.x; // mirror symmetry: B_r(x1,x2) = B_l(-x1,x2)
    const double rl2 = dl_x * dl_x + x.y * x.y;
    const double rr2 = dr_x * dr_x + x.y * x.y;
    const double a2 = p.a() * p.a();
    if (rl2 <= a2) return p.beta(0.5 * rl2);
    if (rr2 <= a2) return p.beta(0.5 * rr2);
    return p.b1();
}

Vec2 vector_potential_left(const MagneticProfile& p, const WellGeometry& g, Vec2 x)
{
    const Vec2 c = g.x_left();
    const double dx = x.x - c.x;
    const double dy = x.y - c.y;
    const double r2 = dx * dx + dy * dy;
    auto res = integrate_gk(
        [&](double t) {
            double u = 0.5 * t * t * r2;
            return p.beta(u) * t;
        },
        0.0, 1.0, 1e-14, 1e-14);
    return {-res.value * dy, res.value * dx};
}

} // namespace magsplit
