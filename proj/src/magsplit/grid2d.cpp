#include "magsplit/grid2d.hpp"

#include "magsplit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magsplit {

namespace {

// smooth potential of the deficit field of one well:
// a(x) = Wdef(|x-c|^2/2) / |x-c|^2 * (-(y-cy), (x-cx)), curl a = B_well - b1
struct WellPotential {
    const MagneticProfile* p;
    Vec2 c;
    void add(double x, double y, double& ax, double& ay) const
    {
        const double dxc = x - c.x, dyc = y - c.y;
        const double r2 = dxc * dxc + dyc * dyc;
        const double u = 0.5 * r2;
        double wdef;
        if (u >= p->u_a()) {
            wdef = p->flux_deficit();
        } else if (r2 < 1e-24) {
            // Wdef(u)/r^2 -> (beta(0) - b1)/2 as r -> 0
            ax += -0.5 * (p->b0() - p->b1()) * dyc;
            ay += 0.5 * (p->b0() - p->b1()) * dxc;
            return;
        } else {
            wdef = p->cumulative_beta(u) - p->b1() * u;
        }
        ax += -wdef / r2 * dyc;
        ay += wdef / r2 * dxc;
    }
};

} // namespace

Lattice::Lattice(double h, const MagneticProfile& p, const WellGeometry& g,
                 const Grid2DParams& par)
{
    if (!(h > 0)) throw std::domain_error("grid2d: h must be positive");
    const double bound = p.b1() * par.dx * par.dx / h;
    if (bound > 0.2) {
        const double need = std::sqrt(0.2 * h / p.b1());
        throw std::invalid_argument("grid2d: plaquette phase bound b1 dx^2/h <= 0.2 violated; "
                                    "need dx <= " + std::to_string(need));
    }
    box_half_ = par.box_half;
    h_ = h;
    const int cells = std::max(4, static_cast<int>(std::lround(2.0 * par.box_half / par.dx)));
    dx_ = 2.0 * par.box_half / cells;
    nx_ = cells - 1; // interior nodes
    kin_ = h * h / (dx_ * dx_);

    WellPotential wl{&p, g.x_left()};
    WellPotential wr{&p, g.x_right()};
    auto Afield = [&](double x, double y, double& ax, double& ay) {
        ax = 0.0;
        ay = p.b1() * (x + box_half_); // Landau gauge for the background
        wl.add(x, y, ax, ay);
        wr.add(x, y, ax, ay);
    };

    const GLRule& gl = gl_rule(12);
    auto node = [&](int i) { return -box_half_ + (i + 1) * dx_; };
    // the profile flattens non-analytically at the disc boundary, which caps
    // fixed-order Gauss accuracy there; edges near either boundary ring get
    // adaptive panels instead
    auto near_ring = [&](double x, double y) {
        for (Vec2 c : {g.x_left(), g.x_right()}) {
            double r = std::hypot(x - c.x, y - c.y);
            if (std::fabs(r - p.a()) < 3.0 * dx_) return true;
        }
        return false;
    };
    auto link_phase = [&](double x0, double y0, double tx, double ty) {
        if (near_ring(x0 + 0.5 * dx_ * tx, y0 + 0.5 * dx_ * ty)) {
            auto res = integrate_gk(
                [&](double t) {
                    double ax, ay;
                    Afield(x0 + t * tx, y0 + t * ty, ax, ay);
                    return ax * tx + ay * ty;
                },
                0.0, dx_, 1e-15, 1e-14);
            return res.value;
        }
        double s = 0;
        for (int half = 0; half < 2; ++half) {
            double lo = 0.5 * dx_ * half;
            for (int q = 0; q < 12; ++q) {
                double t = lo + 0.25 * dx_ * (1.0 + gl.x[q]);
                double ax, ay;
                Afield(x0 + t * tx, y0 + t * ty, ax, ay);
                s += 0.25 * dx_ * gl.w[q] * (ax * tx + ay * ty);
            }
        }
        return s;
    };

    ux_.assign(static_cast<size_t>(nx_) * nx_, {1.0, 0.0});
    uy_.assign(static_cast<size_t>(nx_) * nx_, {1.0, 0.0});
    for (int j = 0; j < nx_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            // x-link from (i,j) to (i+1,j); only well parts contribute to A_x
            if (i + 1 < nx_) {
                double ph = link_phase(node(i), node(j), 1.0, 0.0) / h_;
                ux_[static_cast<size_t>(j) * nx_ + i] = {std::cos(ph), -std::sin(ph)};
            }
            if (j + 1 < nx_) {
                double ph = link_phase(node(i), node(j), 0.0, 1.0) / h_;
                uy_[static_cast<size_t>(j) * nx_ + i] = {std::cos(ph), -std::sin(ph)};
            }
        }
    }

    // flux through the square tiled by the interior plaquettes: constant part
    // analytic, each well contributes its full deficit 2 pi M (the discs must
    // lie inside that square for the comparison to be exact)
    const double side = 2.0 * box_half_ - 2.0 * dx_;
    if (0.5 * g.L + p.a() > box_half_ - dx_)
        throw std::invalid_argument("grid2d: wells do not fit inside the box");
    box_flux_ = p.b1() * side * side + 2.0 * (2.0 * M_PI) * p.flux_deficit();
}

void Lattice::apply(const std::complex<double>* in, std::complex<double>* out) const
{
    const int n = nx_;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const size_t idx = static_cast<size_t>(j) * n + i;
            std::complex<double> acc = 4.0 * in[idx];
            if (i + 1 < n) acc -= ux_[idx] * in[idx + 1];
            if (i > 0) acc -= std::conj(ux_[idx - 1]) * in[idx - 1];
            if (j + 1 < n) acc -= uy_[idx] * in[idx + n];
            if (j > 0) acc -= std::conj(uy_[idx - n]) * in[idx - n];
            out[idx] = kin_ * acc;
        }
    }
}

void Lattice::apply_refined(const std::complex<double>* in,
                            std::complex<long double>* out) const
{
    const int n = nx_;
    auto mul = [](std::complex<double> a, std::complex<double> b) {
        return std::complex<long double>(
            static_cast<long double>(a.real()) * b.real() -
                static_cast<long double>(a.imag()) * b.imag(),
            static_cast<long double>(a.real()) * b.imag() +
                static_cast<long double>(a.imag()) * b.real());
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const size_t idx = static_cast<size_t>(j) * n + i;
            std::complex<long double> acc(4.0L * in[idx].real(), 4.0L * in[idx].imag());
            if (i + 1 < n) acc -= mul(ux_[idx], in[idx + 1]);
            if (i > 0) acc -= mul(std::conj(ux_[idx - 1]), in[idx - 1]);
            if (j + 1 < n) acc -= mul(uy_[idx], in[idx + n]);
            if (j > 0) acc -= mul(std::conj(uy_[idx - n]), in[idx - n]);
            out[idx] = static_cast<long double>(kin_) * acc;
        }
    }
}

double Lattice::plaquette_flux_sum() const
{
    // arg of the plaquette product, summed; each plaquette is small enough
    // that the principal branch is exact under the dx^2 b1/h <= 0.2 bound
    long double total = 0; // ~1e5 terms against a running sum of ~1e3
    const int n = nx_;
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const size_t idx = static_cast<size_t>(j) * n + i;
            std::complex<double> prod = ux_[idx] * uy_[idx + 1] *
                                        std::conj(ux_[idx + n]) * std::conj(uy_[idx]);
            total += std::arg(prod);
        }
    }
    // the interior plaquettes tile (nx-1)^2 cells; scale the direct box flux
    // comparison to the same region in box_flux(); here return raw sum * -h
    return static_cast<double>(-total * h_);
}

double Lattice::box_flux() const { return box_flux_; }

double Lattice::spectral_bound() const { return 8.0 * kin_; }

void Lattice::gauge_transform(unsigned seed)
{
    // deterministic LCG phases chi at the nodes
    const int n = nx_;
    std::vector<double> chi(static_cast<size_t>(n) * n);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ seed;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (auto& c : chi) c = 2.0 * M_PI * next();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const size_t idx = static_cast<size_t>(j) * n + i;
            if (i + 1 < n) {
                double d = chi[idx + 1] - chi[idx];
                ux_[idx] *= std::complex<double>(std::cos(d), std::sin(d));
            }
            if (j + 1 < n) {
                double d = chi[idx + n] - chi[idx];
                uy_[idx] *= std::complex<double>(std::cos(d), std::sin(d));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Chebyshev-filtered subspace iteration

namespace {

using CVec = std::vector<std::complex<double>>;

double dot_re(const CVec& a, const CVec& b)
{
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

std::complex<double> dotc(const CVec& a, const CVec& b)
{
    std::complex<double> s(0, 0);
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void axpy(CVec& y, std::complex<double> alpha, const CVec& x)
{
    for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(CVec& y, double alpha)
{
    for (auto& v : y) v *= alpha;
}

} // namespace

// Hermitian eigen decomposition by cyclic Jacobi for small matrices.
// Pivot (p,q): phase-rotate A_pq real, then the classic symmetric rotation;
// the combined unitary is J = [[c, -s],[s e^{i phi}, c e^{i phi}]] columnwise
// with e^{i phi} = conj(A_pq)/|A_pq|.
void hermitian_eig_small(std::vector<std::complex<double>>& A, int m,
                         std::vector<double>& evals,
                         std::vector<std::complex<double>>& evecs)
{
    evecs.assign(static_cast<size_t>(m) * m, {0, 0});
    for (int i = 0; i < m; ++i) evecs[static_cast<size_t>(i) * m + i] = {1, 0};
    auto at = [&](std::vector<std::complex<double>>& M, int r, int c) -> std::complex<double>& {
        return M[static_cast<size_t>(r) * m + c];
    };
    double scale = 0;
    for (int i = 0; i < m; ++i) scale += std::norm(at(A, i, i));
    scale = std::max(scale, 1e-300);
    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += std::norm(at(A, p, q));
        if (off < 1e-32 * scale) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                std::complex<double> apq = at(A, p, q);
                double g = std::abs(apq);
                if (g < 1e-300) continue;
                std::complex<double> ph = std::conj(apq) / g; // A_pq * ph = |A_pq|
                double app = at(A, p, p).real();
                double aqq = at(A, q, q).real();
                // zeroing (J^H A J)_pq needs g (c^2 - s^2) = c s (app - aqq)
                double tau = (app - aqq) / (2.0 * g);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                std::complex<double> Jqp = s * ph;       // J_{q,p}
                std::complex<double> Jqq = c * ph;       // J_{q,q}
                // A <- J^H A J: columns first (A J), then rows (J^H .)
                for (int r = 0; r < m; ++r) {
                    std::complex<double> arp = at(A, r, p), arq = at(A, r, q);
                    at(A, r, p) = c * arp + Jqp * arq;
                    at(A, r, q) = -s * arp + Jqq * arq;
                }
                for (int r = 0; r < m; ++r) {
                    std::complex<double> apr = at(A, p, r), aqr = at(A, q, r);
                    at(A, p, r) = c * apr + std::conj(Jqp) * aqr;
                    at(A, q, r) = -s * apr + std::conj(Jqq) * aqr;
                }
                at(A, p, q) = 0;
                at(A, q, p) = 0;
                at(A, p, p) = {at(A, p, p).real(), 0.0};
                at(A, q, q) = {at(A, q, q).real(), 0.0};
                for (int r = 0; r < m; ++r) {
                    std::complex<double> vrp = at(evecs, r, p), vrq = at(evecs, r, q);
                    at(evecs, r, p) = c * vrp + Jqp * vrq;
                    at(evecs, r, q) = -s * vrp + Jqq * vrq;
                }
            }
        }
    }
    evals.resize(m);
    for (int i = 0; i < m; ++i) evals[i] = at(A, i, i).real();
    // sort ascending with eigenvector columns
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return evals[a] < evals[b]; });
    std::vector<double> ev2(m);
    std::vector<std::complex<double>> V2(static_cast<size_t>(m) * m);
    for (int c = 0; c < m; ++c) {
        ev2[c] = evals[idx[c]];
        for (int r = 0; r < m; ++r) V2[static_cast<size_t>(r) * m + c] = at(evecs, r, idx[c]);
    }
    evals = std::move(ev2);
    evecs = std::move(V2);
}

EigenResult lowest_eigenpairs(const Lattice& lat, const Grid2DParams& par)
{
    const int n = lat.size();
    const int k = par.n_eig;
    // the spectrum pairs into near-degenerate doublets; resolving the last
    // wanted value requires converging its partner as well
    const int kconv = k + 1;
    const int m = kconv + 6;
    const double lmax = lat.spectral_bound() * 1.001;

    // deterministic pseudo-random start block
    std::vector<CVec> V(m, CVec(n));
    std::uint64_t state = 0x243f6a8885a308d3ULL ^ (0x9e3779b97f4a7c15ULL * par.start_seed);
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 4503599627370496.0 - 1.0;
    };
    for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i) V[b][i] = {next(), next()};

    CVec t1(n), vk(n), vk1(n);
    auto cheb_filter = [&](CVec& v, double locut, int degree) {
        // T_d of the affine map sending [locut, lmax] to [-1, 1]; rescaled
        // along the way since T_d grows exponentially below the window
        const double e = 0.5 * (lmax - locut);
        const double c = 0.5 * (lmax + locut);
        vk = v;
        lat.apply(v.data(), t1.data());
        for (int i = 0; i < n; ++i) vk1[i] = (t1[i] - c * v[i]) / e;
        for (int d = 2; d <= degree; ++d) {
            lat.apply(vk1.data(), t1.data());
            for (int i = 0; i < n; ++i) t1[i] = 2.0 * (t1[i] - c * vk1[i]) / e - vk[i];
            vk.swap(vk1);
            vk1.swap(t1);
            if (d % 16 == 0) {
                double nrm = std::sqrt(dot_re(vk1, vk1));
                if (nrm > 1e60) {
                    scale(vk1, 1.0 / nrm);
                    scale(vk, 1.0 / nrm);
                }
            }
        }
        v = vk1;
        double nrm = std::sqrt(dot_re(v, v));
        scale(v, 1.0 / nrm);
    };

    EigenResult out;
    double locut = 0.5 * lmax;
    int degree = par.chebyshev_degree;
    int locked = 0;
    std::vector<double> ritz;
    for (int round = 0; round < par.max_rounds; ++round) {
        ++out.iterations;
        for (int b = locked; b < m; ++b) cheb_filter(V[b], locut, degree);
        // orthonormalize (modified Gram-Schmidt, twice)
        for (int pass = 0; pass < 2; ++pass) {
            for (int b = 0; b < m; ++b) {
                for (int a = 0; a < b; ++a) {
                    std::complex<double> c = dotc(V[a], V[b]);
                    axpy(V[b], -c, V[a]);
                }
                double nrm = std::sqrt(dot_re(V[b], V[b]));
                if (!(nrm > 1e-14)) {
                    for (int i = 0; i < n; ++i) V[b][i] = {next(), next()};
                    nrm = std::sqrt(dot_re(V[b], V[b]));
                }
                scale(V[b], 1.0 / nrm);
            }
        }
        // Rayleigh-Ritz over the full block
        std::vector<CVec> HV(m, CVec(n));
        for (int b = 0; b < m; ++b) lat.apply(V[b].data(), HV[b].data());
        std::vector<std::complex<double>> G(static_cast<size_t>(m) * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) G[static_cast<size_t>(a) * m + b] = dotc(V[a], HV[b]);
        std::vector<double> evals;
        std::vector<std::complex<double>> S;
        hermitian_eig_small(G, m, evals, S);
        std::vector<CVec> W(m, CVec(n, {0, 0}));
        for (int c = 0; c < m; ++c)
            for (int b = 0; b < m; ++b)
                axpy(W[c], S[static_cast<size_t>(b) * m + c], V[b]);
        V = std::move(W);
        ritz = evals;
        // residuals of the lowest kconv; lock leading converged pairs so the
        // filter budget concentrates on the stragglers
        out.residual.assign(kconv, 0.0);
        bool converged = true;
        locked = 0;
        bool chain = true;
        for (int b = 0; b < kconv; ++b) {
            lat.apply(V[b].data(), t1.data());
            double r2 = 0;
            for (int i = 0; i < n; ++i) {
                std::complex<double> dd = t1[i] - ritz[b] * V[b][i];
                r2 += std::norm(dd);
            }
            out.residual[b] = std::sqrt(r2) / lmax;
            if (out.residual[b] > par.tol) converged = false;
            if (chain && out.residual[b] < 0.1 * par.tol) ++locked;
            else chain = false;
        }
        if (converged) break;
        // window bottom between the wanted states and the top of the block
        const int edge = std::min(kconv + 2, m - 1);
        locut = std::min(0.5 * lmax, std::max(ritz[edge], ritz[kconv - 1] * 1.05));
        // degree sized to the separation of the slowest unconverged state
        const double sep = std::max(locut - ritz[std::min(locked, kconv - 1)], 1e-4 * lmax);
        const double rate = 2.0 * std::sqrt(sep / lmax);
        degree = std::clamp(static_cast<int>(6.0 / rate), par.chebyshev_degree, 700);
    }
    // Final block Rayleigh-Ritz over the lowest k vectors at extended
    // precision. The near-degenerate pairs make the individual Ritz values
    // linearly sensitive to residual-level junk in the pair-internal cross
    // terms; forming the small block with a refined product restores the
    // quadratic accuracy, including the pair splittings.
    {
        // converged states only: unconverged directions would perturb the
        // small block more than they help
        const int kb = kconv;
        std::vector<std::vector<std::complex<long double>>> hv(
            kb, std::vector<std::complex<long double>>(n));
        for (int b = 0; b < kb; ++b) lat.apply_refined(V[b].data(), hv[b].data());
        std::vector<std::complex<double>> Gk(static_cast<size_t>(kb) * kb);
        for (int a = 0; a < kb; ++a) {
            for (int b = 0; b < kb; ++b) {
                std::complex<long double> acc(0, 0);
                for (int i = 0; i < n; ++i) {
                    std::complex<long double> va(V[a][i].real(), V[a][i].imag());
                    acc += std::conj(va) * hv[b][i];
                }
                Gk[static_cast<size_t>(a) * kb + b] =
                    std::complex<double>(static_cast<double>(acc.real()),
                                         static_cast<double>(acc.imag()));
            }
        }
        for (int a = 0; a < kb; ++a)
            for (int b = a + 1; b < kb; ++b) {
                std::complex<double> mm =
                    0.5 * (Gk[static_cast<size_t>(a) * kb + b] +
                           std::conj(Gk[static_cast<size_t>(b) * kb + a]));
                Gk[static_cast<size_t>(a) * kb + b] = mm;
                Gk[static_cast<size_t>(b) * kb + a] = std::conj(mm);
            }
        std::vector<double> evals;
        std::vector<std::complex<double>> S;
        hermitian_eig_small(Gk, kb, evals, S);
        for (int b = 0; b < k; ++b) ritz[b] = evals[b];
    }
    out.lambda.assign(ritz.begin(), ritz.begin() + k);
    out.residual.resize(k);
    out.vectors.assign(V.begin(), V.begin() + k);
    return out;
}

} // namespace magsplit
