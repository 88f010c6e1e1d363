#include "g2strom/lattice.hpp"

#include <cmath>
#include <cstdlib>

#include "g2strom/errors.hpp"

namespace g2strom {

namespace {

// Cartan matrix of E8 (simple chain 1..7, node 8 attached to node 5).
constexpr int kE8[8][8] = {
    {2, -1, 0, 0, 0, 0, 0, 0},  //
    {-1, 2, -1, 0, 0, 0, 0, 0},  //
    {0, -1, 2, -1, 0, 0, 0, 0},  //
    {0, 0, -1, 2, -1, 0, 0, 0},  //
    {0, 0, 0, -1, 2, -1, 0, -1},  //
    {0, 0, 0, 0, -1, 2, -1, 0},  //
    {0, 0, 0, 0, 0, -1, 2, 0},  //
    {0, 0, 0, 0, -1, 0, 0, 2},
};

void put_block_e8_negative(std::vector<long long>& g, int rank, int at) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g[(at + i) * rank + (at + j)] = -kE8[i][j];
}

void put_block_hyperbolic(std::vector<long long>& g, int rank, int at) {
    g[at * rank + at + 1] = 1;
    g[(at + 1) * rank + at] = 1;
}

}  // namespace

IntersectionLattice::IntersectionLattice(std::string name, int rank,
                                         std::vector<long long> gram)
    : name_(std::move(name)), rank_(rank), gram_(std::move(gram)) {
    if (!is_even())
        throw Error("IntersectionLattice " + name_ + ": gram matrix is not even");
    if (std::llabs(determinant()) != 1)
        throw Error("IntersectionLattice " + name_ + ": gram matrix is not unimodular");
}

const IntersectionLattice& IntersectionLattice::k3() {
    static const IntersectionLattice lattice = [] {
        const int rank = 22;
        std::vector<long long> g(rank * rank, 0);
        put_block_e8_negative(g, rank, 0);
        put_block_e8_negative(g, rank, 8);
        put_block_hyperbolic(g, rank, 16);
        put_block_hyperbolic(g, rank, 18);
        put_block_hyperbolic(g, rank, 20);
        return IntersectionLattice("K3", rank, std::move(g));
    }();
    return lattice;
}

const IntersectionLattice& IntersectionLattice::t4() {
    static const IntersectionLattice lattice = [] {
        const int rank = 6;
        std::vector<long long> g(rank * rank, 0);
        put_block_hyperbolic(g, rank, 0);
        put_block_hyperbolic(g, rank, 2);
        put_block_hyperbolic(g, rank, 4);
        return IntersectionLattice("T4", rank, std::move(g));
    }();
    return lattice;
}

long long IntersectionLattice::pairing(const std::vector<long long>& a,
                                       const std::vector<long long>& b) const {
    if (static_cast<int>(a.size()) != rank_ || static_cast<int>(b.size()) != rank_)
        throw DomainError("IntersectionLattice::pairing: wrong vector length");
    long long s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += a[i] * gram(i, j) * b[j];
    return s;
}

long long IntersectionLattice::q_value(const std::vector<long long>& c) const {
    return pairing(c, c);
}

bool IntersectionLattice::is_even() const {
    for (int i = 0; i < rank_; ++i)
        if (gram(i, i) % 2 != 0) return false;
    return true;
}

long long IntersectionLattice::determinant() const {
    // Bareiss fraction-free elimination in 128-bit intermediates
    const int n = rank_;
    std::vector<__int128> m(gram_.begin(), gram_.end());
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k * n + k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r * n + k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(m[k * n + c], m[piv * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i * n + j] =
                    (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
        prev = m[k * n + k];
    }
    return sign * static_cast<long long>(m[(n - 1) * n + (n - 1)]);
}

namespace {

ConstraintCertificate base_certificate(int r, const std::array<long long, 3>& q_values,
                                       long long c2_base) {
    if (r < 1) throw DomainError("check_constraints: rank must be >= 1");
    ConstraintCertificate cert;
    cert.r = r;
    cert.q_values = q_values;
    cert.c2_base = c2_base;
    return cert;
}

}  // namespace

ConstraintCertificate check_constraints(const Rational& t2, const Rational& alpha,
                                        int r, const std::array<long long, 3>& q_values,
                                        long long c2_base) {
    if (alpha == Rational(0)) throw DomainError("check_constraints: alpha must be nonzero");
    if (t2 <= Rational(0)) throw DomainError("check_constraints: t^2 must be positive");
    ConstraintCertificate cert = base_certificate(r, q_values, c2_base);
    cert.exact = true;
    cert.t2 = t2;
    cert.alpha = alpha;
    const long long qsum = q_values[0] + q_values[1] + q_values[2];
    cert.ratio = Rational(2) * t2 / alpha * Rational(qsum);
    cert.ratio_value = boost::rational_cast<double>(cert.ratio);
    cert.integrality_ok = (cert.ratio.denominator() == 1);
    if (cert.integrality_ok) cert.c2_target = c2_base + cert.ratio.numerator();
    cert.rank_ok = Rational(r) <= Rational(c2_base) + cert.ratio;
    return cert;
}

ConstraintCertificate check_constraints(double t2, double alpha, int r,
                                        const std::array<long long, 3>& q_values,
                                        long long c2_base) {
    if (alpha == 0.0) throw DomainError("check_constraints: alpha must be nonzero");
    if (!(t2 > 0.0)) throw DomainError("check_constraints: t^2 must be positive");
    ConstraintCertificate cert = base_certificate(r, q_values, c2_base);
    cert.exact = false;
    cert.approx_warning = true;
    const long long qsum = q_values[0] + q_values[1] + q_values[2];
    cert.ratio_value = 2.0 * t2 / alpha * static_cast<double>(qsum);
    const double nearest = std::round(cert.ratio_value);
    cert.integrality_ok = std::abs(cert.ratio_value - nearest) < 1e-9;
    if (cert.integrality_ok)
        cert.c2_target = c2_base + static_cast<long long>(nearest);
    cert.rank_ok = static_cast<double>(r) <= static_cast<double>(c2_base) +
                       cert.ratio_value + 1e-9;
    return cert;
}

bool tdual_integrality(const Rational& t2,
                       const std::array<std::array<long, 6>, 3>& beta_periods) {
    if (t2 <= Rational(0)) throw DomainError("tdual_integrality: t^2 must be positive");
    for (const auto& periods : beta_periods)
        for (long p : periods)
            if ((t2 * Rational(p)).denominator() != 1) return false;
    return true;
}

std::vector<long long> t4_class(const std::array<long, 6>& periods) {
    return std::vector<long long>(periods.begin(), periods.end());
}

}  // namespace g2strom
