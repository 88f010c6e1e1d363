#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "g2strom/exterior.hpp"

// Periodic grid fields of alternating forms on the flat 4-torus, with all
// derivatives taken spectrally. The grid is uniform N^4 (N a power of two);
// real data, FFT plans shared through an immutable engine.

namespace g2strom {

class SpectralEngine;

class Torus4 {
public:
    Torus4(const std::array<double, 4>& side_lengths, int grid_n);

    int grid() const { return n_; }
    double side(int a) const { return sides_[a]; }
    const std::array<double, 4>& sides() const { return sides_; }
    std::size_t points() const;
    double volume() const { return sides_[0] * sides_[1] * sides_[2] * sides_[3]; }
    double coordinate(int axis, int index) const;

    const SpectralEngine& engine() const { return *engine_; }

    bool same_grid(const Torus4& o) const;

private:
    std::array<double, 4> sides_;
    int n_;
    std::shared_ptr<const SpectralEngine> engine_;
};

class BaseField {
public:
    BaseField() = default;
    BaseField(std::shared_ptr<const Torus4> base, int degree);

    static BaseField constant(std::shared_ptr<const Torus4> base,
                              const AlternatingForm& value);

    const std::shared_ptr<const Torus4>& base() const { return base_; }
    int degree() const { return deg_; }
    int components() const { return static_cast<int>(c_.size()); }
    bool empty() const { return base_ == nullptr; }

    std::vector<double>& comp(int ci) { return c_[ci]; }
    const std::vector<double>& comp(int ci) const { return c_[ci]; }

    AlternatingForm value_at(std::size_t x) const;

    BaseField& operator+=(const BaseField& o);
    BaseField& operator-=(const BaseField& o);
    BaseField& operator*=(double s);
    friend BaseField operator+(BaseField a, const BaseField& b) { return a += b; }
    friend BaseField operator-(BaseField a, const BaseField& b) { return a -= b; }
    friend BaseField operator*(double s, BaseField a) { return a *= s; }

    // pointwise product with a scalar (degree-0) field
    BaseField scaled_by(const BaseField& scalar) const;

    // discrete L2 norm: sqrt(grid mean of the summed squared coefficients)
    double l2_norm() const;
    double max_abs() const;
    double min_value(int ci = 0) const;
    double mean(int ci = 0) const;
    // integral over the torus of the top component against dvol (degree 4),
    // or of a scalar component (degree 0)
    double integral() const;

private:
    std::shared_ptr<const Torus4> base_;
    int deg_ = 0;
    std::vector<std::vector<double>> c_;
};

// ---- spectral operations -------------------------------------------------

// Exterior derivative, spectral in every axis (exact on band-limited data up
// to rounding; Nyquist modes are dropped).
BaseField spectral_d(const BaseField& f);

// Flat Euclidean Hodge star on the base, pointwise constant relabeling.
BaseField base_star(const BaseField& f);

// Pointwise wedge; throws DegreeOverflowError when degrees sum past 4
// (fibered callers skip those terms, which vanish as pullbacks).
BaseField base_wedge(const BaseField& a, const BaseField& b);

// delta d on scalar fields (positive spectrum).
BaseField laplacian(const BaseField& f);

// Solves laplacian(h) = rho with mean(h) = mean_value. Requires a mean-free
// source: |mean(rho)| <= tol * ||rho||, else throws ObstructedSourceError
// carrying the integral mismatch.
BaseField poisson_solve(const BaseField& rho, double mean_value = 1.0,
                        double tol = 1e-10);

// exp(s u) evaluated pointwise on the grid.
BaseField pointwise_exp(const BaseField& u, double s = 1.0);

// exp(s u) evaluated through a 2x zero-padded grid (de-aliased for
// band-limited u); u must be a scalar field.
BaseField padded_exp(const BaseField& u, double s = 1.0);

// De-aliased pointwise product of two scalar fields via 2x zero padding.
BaseField padded_multiply(const BaseField& a, const BaseField& b);

// |f|^2 as a scalar field (flat metric, orthonormal coordinate coframe).
BaseField pointwise_norm2(const BaseField& f);

// ---- constant structure forms ---------------------------------------------

// Hyperkahler triple w1 = dx01+dx23, w2 = dx02+dx31, w3 = dx03+dx12.
BaseField hyperkahler_form(std::shared_ptr<const Torus4> base, int i);
BaseField base_volume_form(std::shared_ptr<const Torus4> base);

// Constant 2-form with the given integer periods, ordered
// (p01, p23, p02, p31, p03, p12) to match the three hyperbolic-plane blocks
// of the intersection lattice: coefficient on dx^{ab} is 2 pi p_ab/(La Lb).
BaseField two_form_from_periods(std::shared_ptr<const Torus4> base,
                                const std::array<long, 6>& periods);

// || *f + f || as a number: zero exactly for anti-self-dual 2-form fields.
double asd_defect(const BaseField& f);

// ---- flat binary serialization ---------------------------------------------
// Layout: int64 grid N, int64 degree, 4 x float64 side lengths, then the
// C(4,k) coefficient grids in index order, each N^4 float64, axis-major
// (x0 slowest), all little-endian.
void save_field(const BaseField& f, const std::string& path);
BaseField load_field(const std::string& path);

}  // namespace g2strom
