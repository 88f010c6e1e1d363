#include "g2strom/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <random>

#include "g2strom/errors.hpp"
#include "g2strom/grid_modes.hpp"

namespace g2strom {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t real_size(int m) { return static_cast<std::size_t>(m) * m * m * m; }
std::size_t spec_size(int m) {
    return static_cast<std::size_t>(m) * m * m * (m / 2 + 1);
}

int wavenumber(int m, int i) { return i <= m / 2 ? i : i - m; }

}  // namespace

// ---- SpectralEngine ---------------------------------------------------------

class SpectralEngine {
public:
    explicit SpectralEngine(int n) : n_(n) {
        plan(n, fwd_n_, bwd_n_);
        plan(2 * n, fwd_2n_, bwd_2n_);
    }
    ~SpectralEngine() {
        fftw_destroy_plan(fwd_n_);
        fftw_destroy_plan(bwd_n_);
        fftw_destroy_plan(fwd_2n_);
        fftw_destroy_plan(bwd_2n_);
    }
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    int n() const { return n_; }

    // normalized forward transform (true Fourier coefficients)
    std::vector<std::complex<double>> forward(int m, std::vector<double> in) const {
        std::vector<std::complex<double>> out(spec_size(m));
        fftw_execute_dft_r2c(m == n_ ? fwd_n_ : fwd_2n_, in.data(),
                             reinterpret_cast<fftw_complex*>(out.data()));
        const double norm = 1.0 / static_cast<double>(real_size(m));
        for (auto& z : out) z *= norm;
        return out;
    }

    // inverse of `forward` (consumes the spectrum; c2r scrambles its input)
    std::vector<double> inverse(int m, std::vector<std::complex<double>> spec) const {
        std::vector<double> out(real_size(m));
        fftw_execute_dft_c2r(m == n_ ? bwd_n_ : bwd_2n_,
                             reinterpret_cast<fftw_complex*>(spec.data()), out.data());
        return out;
    }

private:
    void plan(int m, fftw_plan& fwd, fftw_plan& bwd) {
        std::vector<double> r(real_size(m));
        std::vector<std::complex<double>> c(spec_size(m));
        const int dims[4] = {m, m, m, m};
        fwd = fftw_plan_dft_r2c(4, dims, r.data(),
                                reinterpret_cast<fftw_complex*>(c.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd = fftw_plan_dft_c2r(4, dims, reinterpret_cast<fftw_complex*>(c.data()),
                                r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!fwd || !bwd) throw Error("SpectralEngine: FFTW planning failed");
    }

    int n_;
    fftw_plan fwd_n_, bwd_n_, fwd_2n_, bwd_2n_;
};

// ---- Torus4 ------------------------------------------------------------------

Torus4::Torus4(const std::array<double, 4>& side_lengths, int grid_n)
    : sides_(side_lengths), n_(grid_n) {
    for (double L : sides_)
        if (!(L > 0.0)) throw DomainError("Torus4: side lengths must be positive");
    if (!is_power_of_two(n_) || n_ < 4)
        throw DomainError("Torus4: grid resolution must be a power of two >= 4");
    engine_ = std::make_shared<const SpectralEngine>(n_);
}

std::size_t Torus4::points() const { return real_size(n_); }

double Torus4::coordinate(int axis, int index) const {
    return sides_[axis] * static_cast<double>(index) / static_cast<double>(n_);
}

bool Torus4::same_grid(const Torus4& o) const {
    return n_ == o.n_ && sides_ == o.sides_;
}

// ---- BaseField ----------------------------------------------------------------

BaseField::BaseField(std::shared_ptr<const Torus4> base, int degree)
    : base_(std::move(base)), deg_(degree) {
    if (degree < 0 || degree > 4) throw DomainError("BaseField: degree must be 0..4");
    c_.assign(mi::binomial(4, degree), std::vector<double>(base_->points(), 0.0));
}

BaseField BaseField::constant(std::shared_ptr<const Torus4> base,
                              const AlternatingForm& value) {
    if (value.dimension() != 4) throw DomainError("BaseField::constant: need a form on R^4");
    BaseField f(std::move(base), value.degree());
    for (int ci = 0; ci < f.components(); ++ci)
        f.c_[ci].assign(f.base_->points(), value[ci]);
    return f;
}

AlternatingForm BaseField::value_at(std::size_t x) const {
    AlternatingForm v(4, deg_);
    for (int ci = 0; ci < components(); ++ci) v[ci] = c_[ci][x];
    return v;
}

namespace {
void require_compatible(const BaseField& a, const BaseField& b, bool same_degree = true) {
    if (a.empty() || b.empty()) throw DomainError("BaseField: empty operand");
    if (!a.base()->same_grid(*b.base()))
        throw DomainError("BaseField: operands live on different grids");
    if (same_degree && a.degree() != b.degree())
        throw DomainError("BaseField: degree mismatch");
}
}  // namespace

BaseField& BaseField::operator+=(const BaseField& o) {
    require_compatible(*this, o);
    for (int ci = 0; ci < components(); ++ci)
        for (std::size_t x = 0; x < c_[ci].size(); ++x) c_[ci][x] += o.c_[ci][x];
    return *this;
}

BaseField& BaseField::operator-=(const BaseField& o) {
    require_compatible(*this, o);
    for (int ci = 0; ci < components(); ++ci)
        for (std::size_t x = 0; x < c_[ci].size(); ++x) c_[ci][x] -= o.c_[ci][x];
    return *this;
}

BaseField& BaseField::operator*=(double s) {
    for (auto& comp : c_)
        for (double& v : comp) v *= s;
    return *this;
}

BaseField BaseField::scaled_by(const BaseField& scalar) const {
    require_compatible(*this, scalar, false);
    if (scalar.degree() != 0) throw DomainError("scaled_by: scale must be a 0-form");
    BaseField out = *this;
    const auto& s = scalar.comp(0);
    for (int ci = 0; ci < out.components(); ++ci)
        for (std::size_t x = 0; x < s.size(); ++x) out.c_[ci][x] *= s[x];
    return out;
}

double BaseField::l2_norm() const {
    if (empty()) return 0.0;
    double acc = 0.0;
    for (const auto& comp : c_)
        for (double v : comp) acc += v * v;
    return std::sqrt(acc / static_cast<double>(base_->points()));
}

double BaseField::max_abs() const {
    double m = 0.0;
    for (const auto& comp : c_)
        for (double v : comp) m = std::max(m, std::abs(v));
    return m;
}

double BaseField::min_value(int ci) const {
    double m = c_[ci][0];
    for (double v : c_[ci]) m = std::min(m, v);
    return m;
}

double BaseField::mean(int ci) const {
    double acc = 0.0;
    for (double v : c_[ci]) acc += v;
    return acc / static_cast<double>(c_[ci].size());
}

double BaseField::integral() const {
    if (deg_ != 0 && deg_ != 4)
        throw DomainError("integral: defined for scalar and top-degree fields");
    return mean(0) * base_->volume();
}

// ---- spectral operations -------------------------------------------------------

BaseField spectral_d(const BaseField& f) {
    if (f.empty()) throw DomainError("spectral_d: empty field");
    if (f.degree() == 4) throw DomainError("spectral_d: no 5-forms on the base");
    const auto& torus = *f.base();
    const auto& eng = torus.engine();
    const int n = torus.grid();
    const int nh = n / 2 + 1;

    std::vector<std::vector<std::complex<double>>> spec(f.components());
    for (int ci = 0; ci < f.components(); ++ci) spec[ci] = eng.forward(n, f.comp(ci));

    const auto& tin = mi::basis(4, f.degree());
    const auto& tout = mi::basis(4, f.degree() + 1);
    BaseField out(f.base(), f.degree() + 1);

    std::vector<std::complex<double>> acc(spec_size(n));
    for (int co = 0; co < out.components(); ++co) {
        const std::uint8_t K = tout.mask_of[co];
        std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
        for (int a = 0; a < 4; ++a) {
            if (!(K & (1u << a))) continue;
            const int ci = tin.index_of[K & ~static_cast<std::uint8_t>(1u << a)];
            const double sgn = mi::removal_sign(K, a);
            const double scale = 2.0 * M_PI / torus.side(a);
            std::size_t idx = 0;
            for (int k0 = 0; k0 < n; ++k0)
                for (int k1 = 0; k1 < n; ++k1)
                    for (int k2 = 0; k2 < n; ++k2)
                        for (int k3 = 0; k3 < nh; ++k3, ++idx) {
                            const int kk[4] = {wavenumber(n, k0), wavenumber(n, k1),
                                               wavenumber(n, k2), k3};
                            int ka = kk[a];
                            if (std::abs(ka) == n / 2) ka = 0;  // drop Nyquist
                            acc[idx] += std::complex<double>(0.0, sgn * scale * ka) *
                                        spec[ci][idx];
                        }
        }
        out.comp(co) = eng.inverse(n, acc);
    }
    return out;
}

BaseField base_star(const BaseField& f) {
    if (f.empty()) throw DomainError("base_star: empty field");
    const auto& tin = mi::basis(4, f.degree());
    const auto& tout = mi::basis(4, 4 - f.degree());
    BaseField out(f.base(), 4 - f.degree());
    for (int ci = 0; ci < f.components(); ++ci) {
        const std::uint8_t m = tin.mask_of[ci];
        const std::uint8_t comp = 0b1111u & ~m;
        const double sgn = mi::merge_sign(m, comp);
        auto& dst = out.comp(tout.index_of[comp]);
        const auto& src = f.comp(ci);
        for (std::size_t x = 0; x < src.size(); ++x) dst[x] = sgn * src[x];
    }
    return out;
}

BaseField base_wedge(const BaseField& a, const BaseField& b) {
    require_compatible(a, b, false);
    if (a.degree() + b.degree() > 4)
        throw DegreeOverflowError("base_wedge: degree sum exceeds 4");
    const auto& ta = mi::basis(4, a.degree());
    const auto& tb = mi::basis(4, b.degree());
    const auto& tr = mi::basis(4, a.degree() + b.degree());
    BaseField out(a.base(), a.degree() + b.degree());
    for (int i = 0; i < a.components(); ++i) {
        const std::uint8_t ma = ta.mask_of[i];
        for (int j = 0; j < b.components(); ++j) {
            const std::uint8_t mb = tb.mask_of[j];
            if (ma & mb) continue;
            const double sgn = mi::merge_sign(ma, mb);
            auto& dst = out.comp(tr.index_of[ma | mb]);
            const auto& ca = a.comp(i);
            const auto& cb = b.comp(j);
            for (std::size_t x = 0; x < ca.size(); ++x) dst[x] += sgn * ca[x] * cb[x];
        }
    }
    return out;
}

namespace {

// squared spectral wavenumber |2 pi k / L|^2, Nyquist dropped
double laplace_multiplier(const Torus4& t, int k0, int k1, int k2, int k3) {
    const int n = t.grid();
    const int kk[4] = {wavenumber(n, k0), wavenumber(n, k1), wavenumber(n, k2), k3};
    double s = 0.0;
    for (int a = 0; a < 4; ++a) {
        int ka = kk[a];
        if (std::abs(ka) == n / 2) ka = 0;
        const double w = 2.0 * M_PI * ka / t.side(a);
        s += w * w;
    }
    return s;
}

}  // namespace

BaseField laplacian(const BaseField& f) {
    if (f.degree() != 0) throw DomainError("laplacian: scalar fields only");
    const auto& torus = *f.base();
    const int n = torus.grid();
    auto spec = torus.engine().forward(n, f.comp(0));
    std::size_t idx = 0;
    for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                for (int k3 = 0; k3 < n / 2 + 1; ++k3, ++idx)
                    spec[idx] *= laplace_multiplier(torus, k0, k1, k2, k3);
    BaseField out(f.base(), 0);
    out.comp(0) = torus.engine().inverse(n, std::move(spec));
    return out;
}

BaseField poisson_solve(const BaseField& rho, double mean_value, double tol) {
    if (rho.degree() != 0) throw DomainError("poisson_solve: scalar sources only");
    const auto& torus = *rho.base();
    const int n = torus.grid();
    const double mean = rho.mean(0);
    // relative to the source scale, with a unit floor so that sources that
    // cancel to rounding (balanced scenarios) stay solvable
    if (std::abs(mean) > tol * std::max(rho.l2_norm(), 1.0))
        throw ObstructedSourceError(
            "poisson_solve: source integral does not vanish", mean * torus.volume());

    auto spec = torus.engine().forward(n, rho.comp(0));
    std::size_t idx = 0;
    for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                for (int k3 = 0; k3 < n / 2 + 1; ++k3, ++idx) {
                    const double lam = laplace_multiplier(torus, k0, k1, k2, k3);
                    spec[idx] = lam > 0.0 ? spec[idx] / lam : std::complex<double>(0.0);
                }
    spec[0] = mean_value;
    BaseField out(rho.base(), 0);
    out.comp(0) = torus.engine().inverse(n, std::move(spec));
    return out;
}

namespace {

// move an N-spectrum into the middle of a 2N-spectrum (zero padding);
// modes with any |k_a| >= N/2 are dropped
std::vector<std::complex<double>> pad_spectrum(int n,
                                               const std::vector<std::complex<double>>& s) {
    const int m = 2 * n;
    std::vector<std::complex<double>> out(spec_size(m));
    std::size_t idx = 0;
    for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                for (int k3 = 0; k3 < n / 2 + 1; ++k3, ++idx) {
                    const int kk[3] = {wavenumber(n, k0), wavenumber(n, k1),
                                       wavenumber(n, k2)};
                    if (std::abs(kk[0]) >= n / 2 || std::abs(kk[1]) >= n / 2 ||
                        std::abs(kk[2]) >= n / 2 || k3 >= n / 2)
                        continue;
                    const int j0 = kk[0] >= 0 ? kk[0] : m + kk[0];
                    const int j1 = kk[1] >= 0 ? kk[1] : m + kk[1];
                    const int j2 = kk[2] >= 0 ? kk[2] : m + kk[2];
                    out[((static_cast<std::size_t>(j0) * m + j1) * m + j2) * (m / 2 + 1) +
                        k3] = s[idx];
                }
    return out;
}

std::vector<std::complex<double>> truncate_spectrum(
    int n, const std::vector<std::complex<double>>& s) {
    const int m = 2 * n;
    std::vector<std::complex<double>> out(spec_size(n));
    std::size_t idx = 0;
    for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                for (int k3 = 0; k3 < n / 2 + 1; ++k3, ++idx) {
                    const int kk[3] = {wavenumber(n, k0), wavenumber(n, k1),
                                       wavenumber(n, k2)};
                    if (std::abs(kk[0]) >= n / 2 || std::abs(kk[1]) >= n / 2 ||
                        std::abs(kk[2]) >= n / 2 || k3 >= n / 2)
                        continue;
                    const int j0 = kk[0] >= 0 ? kk[0] : m + kk[0];
                    const int j1 = kk[1] >= 0 ? kk[1] : m + kk[1];
                    const int j2 = kk[2] >= 0 ? kk[2] : m + kk[2];
                    out[idx] = s[((static_cast<std::size_t>(j0) * m + j1) * m + j2) *
                                     (m / 2 + 1) +
                                 k3];
                }
    return out;
}

template <typename MapFn>
BaseField padded_pointwise(const BaseField& a, const BaseField* b, MapFn&& fn) {
    const auto& torus = *a.base();
    const auto& eng = torus.engine();
    const int n = torus.grid();
    auto big_a = eng.inverse(2 * n, pad_spectrum(n, eng.forward(n, a.comp(0))));
    if (b) {
        const auto big_b = eng.inverse(2 * n, pad_spectrum(n, eng.forward(n, b->comp(0))));
        for (std::size_t x = 0; x < big_a.size(); ++x) big_a[x] = fn(big_a[x], big_b[x]);
    } else {
        for (double& v : big_a) v = fn(v, 0.0);
    }
    BaseField out(a.base(), 0);
    out.comp(0) = eng.inverse(n, truncate_spectrum(n, eng.forward(2 * n, std::move(big_a))));
    return out;
}

}  // namespace

BaseField pointwise_exp(const BaseField& u, double s) {
    if (u.degree() != 0) throw DomainError("pointwise_exp: scalar fields only");
    BaseField out(u.base(), 0);
    const auto& src = u.comp(0);
    auto& dst = out.comp(0);
    for (std::size_t x = 0; x < src.size(); ++x) dst[x] = std::exp(s * src[x]);
    return out;
}

BaseField padded_exp(const BaseField& u, double s) {
    if (u.degree() != 0) throw DomainError("padded_exp: scalar fields only");
    return padded_pointwise(u, nullptr, [s](double v, double) { return std::exp(s * v); });
}

BaseField padded_multiply(const BaseField& a, const BaseField& b) {
    require_compatible(a, b);
    if (a.degree() != 0) throw DomainError("padded_multiply: scalar fields only");
    return padded_pointwise(a, &b, [](double x, double y) { return x * y; });
}

BaseField pointwise_norm2(const BaseField& f) {
    BaseField out(f.base(), 0);
    auto& dst = out.comp(0);
    for (int ci = 0; ci < f.components(); ++ci) {
        const auto& src = f.comp(ci);
        for (std::size_t x = 0; x < src.size(); ++x) dst[x] += src[x] * src[x];
    }
    return out;
}

// ---- structure forms -------------------------------------------------------------

BaseField hyperkahler_form(std::shared_ptr<const Torus4> base, int i) {
    AlternatingForm w(4, 2);
    switch (i) {
        case 1:
            w = AlternatingForm::monomial(4, {0, 1}) + AlternatingForm::monomial(4, {2, 3});
            break;
        case 2:
            w = AlternatingForm::monomial(4, {0, 2}) + AlternatingForm::monomial(4, {3, 1});
            break;
        case 3:
            w = AlternatingForm::monomial(4, {0, 3}) + AlternatingForm::monomial(4, {1, 2});
            break;
        default:
            throw DomainError("hyperkahler_form: index must be 1, 2 or 3");
    }
    return BaseField::constant(std::move(base), w);
}

BaseField base_volume_form(std::shared_ptr<const Torus4> base) {
    return BaseField::constant(std::move(base),
                               AlternatingForm::monomial(4, {0, 1, 2, 3}));
}

BaseField two_form_from_periods(std::shared_ptr<const Torus4> base,
                                const std::array<long, 6>& periods) {
    const auto& L = base->sides();
    AlternatingForm w(4, 2);
    const double twopi = 2.0 * M_PI;
    w.set_coefficient(0b0011, twopi * periods[0] / (L[0] * L[1]));   // p01 dx01
    w.set_coefficient(0b1100, twopi * periods[1] / (L[2] * L[3]));   // p23 dx23
    w.set_coefficient(0b0101, twopi * periods[2] / (L[0] * L[2]));   // p02 dx02
    w.set_coefficient(0b1010, -twopi * periods[3] / (L[1] * L[3]));  // p31 dx31
    w.set_coefficient(0b1001, twopi * periods[4] / (L[0] * L[3]));   // p03 dx03
    w.set_coefficient(0b0110, twopi * periods[5] / (L[1] * L[2]));   // p12 dx12
    return BaseField::constant(std::move(base), w);
}

double asd_defect(const BaseField& f) {
    if (f.degree() != 2) throw DomainError("asd_defect: 2-form fields only");
    return (base_star(f) + f).l2_norm();
}

// ---- cosine-mode profiles ----------------------------------------------------------

BaseField field_from_cosine_modes(const std::shared_ptr<const Torus4>& base,
                                  const std::vector<CosineMode>& modes) {
    BaseField f(base, 0);
    const int n = base->grid();
    auto& c = f.comp(0);
    std::size_t idx = 0;
    for (int x0 = 0; x0 < n; ++x0)
        for (int x1 = 0; x1 < n; ++x1)
            for (int x2 = 0; x2 < n; ++x2)
                for (int x3 = 0; x3 < n; ++x3, ++idx) {
                    const int xs[4] = {x0, x1, x2, x3};
                    double v = 0.0;
                    for (const CosineMode& m : modes) {
                        double arg = m.phase;
                        for (int a = 0; a < 4; ++a)
                            arg += 2.0 * M_PI * m.k[a] * xs[a] / n;
                        v += m.amp * std::cos(arg);
                    }
                    c[idx] = v;
                }
    return f;
}

std::vector<CosineMode> random_cosine_modes(std::uint64_t seed, int band, int count,
                                            double total_amplitude) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> K(-band, band);
    std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
    std::vector<CosineMode> modes;
    modes.reserve(count);
    for (int i = 0; i < count; ++i) {
        CosineMode m;
        m.k = {K(gen), K(gen), K(gen), K(gen)};
        if (m.k[0] == 0 && m.k[1] == 0 && m.k[2] == 0 && m.k[3] == 0) m.k[0] = 1;
        m.amp = total_amplitude / count;
        m.phase = U(gen);
        modes.push_back(m);
    }
    return modes;
}

// ---- serialization -----------------------------------------------------------------

void save_field(const BaseField& f, const std::string& path) {
    if (f.empty()) throw DomainError("save_field: empty field");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("save_field: cannot open " + path);
    const std::int64_t n = f.base()->grid();
    const std::int64_t deg = f.degree();
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&deg), 8);
    for (double L : f.base()->sides()) os.write(reinterpret_cast<const char*>(&L), 8);
    for (int ci = 0; ci < f.components(); ++ci)
        os.write(reinterpret_cast<const char*>(f.comp(ci).data()),
                 static_cast<std::streamsize>(f.comp(ci).size() * 8));
    if (!os) throw Error("save_field: write failed on " + path);
}

BaseField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("load_field: cannot open " + path);
    std::int64_t n = 0, deg = 0;
    std::array<double, 4> sides{};
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&deg), 8);
    for (double& L : sides) is.read(reinterpret_cast<char*>(&L), 8);
    if (!is || n < 4 || deg < 0 || deg > 4)
        throw Error("load_field: malformed header in " + path);
    auto torus = std::make_shared<const Torus4>(sides, static_cast<int>(n));
    BaseField f(torus, static_cast<int>(deg));
    for (int ci = 0; ci < f.components(); ++ci) {
        is.read(reinterpret_cast<char*>(f.comp(ci).data()),
                static_cast<std::streamsize>(f.comp(ci).size() * 8));
    }
    if (!is) throw Error("load_field: truncated payload in " + path);
    return f;
}

}  // namespace g2strom
