#include "g2strom/exterior.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "g2strom/errors.hpp"

namespace g2strom {

namespace mi {

namespace {

std::vector<BasisTable> build_tables() {
    std::vector<BasisTable> tables;
    tables.reserve((kMaxDim + 1) * (kMaxDim + 2) / 2);
    for (int n = 0; n <= kMaxDim; ++n) {
        for (int k = 0; k <= n; ++k) {
            BasisTable t;
            t.n = n;
            t.k = k;
            t.index_of.fill(-1);
            // lex enumeration of increasing k-tuples out of {0,..,n-1}
            std::vector<int> tuple(k);
            for (int i = 0; i < k; ++i) tuple[i] = i;
            const int count = binomial(n, k);
            t.mask_of.reserve(count);
            for (int c = 0; c < count; ++c) {
                std::uint8_t mask = 0;
                for (int i : tuple) mask |= static_cast<std::uint8_t>(1u << i);
                t.index_of[mask] = static_cast<int>(t.mask_of.size());
                t.mask_of.push_back(mask);
                // advance to the next tuple
                int j = k - 1;
                while (j >= 0 && tuple[j] == n - k + j) --j;
                if (j < 0) break;
                ++tuple[j];
                for (int l = j + 1; l < k; ++l) tuple[l] = tuple[l - 1] + 1;
            }
            tables.push_back(std::move(t));
        }
    }
    return tables;
}

}  // namespace

const BasisTable& basis(int n, int k) {
    static const std::vector<BasisTable> tables = build_tables();
    return tables[n * (n + 1) / 2 + k];
}

}  // namespace mi

AlternatingForm::AlternatingForm(int dim, int degree) : dim_(dim), deg_(degree) {
    if (dim < 0 || dim > mi::kMaxDim || degree < 0 || degree > dim)
        throw DomainError("AlternatingForm: invalid dimension/degree");
    c_.assign(mi::binomial(dim, degree), 0.0);
}

AlternatingForm AlternatingForm::monomial(int dim, std::initializer_list<int> idx,
                                          double value) {
    AlternatingForm f(dim, static_cast<int>(idx.size()));
    std::uint8_t mask = 0;
    int sign = 1;
    // insertion-sort the index list, tracking the permutation sign
    std::vector<int> v(idx);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[j] < v[i]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            } else if (v[j] == v[i]) {
                return f;  // repeated index: zero form
            }
        }
        if (v[i] < 0 || v[i] >= dim) throw DomainError("monomial: index out of range");
        mask |= static_cast<std::uint8_t>(1u << v[i]);
    }
    f.set_coefficient(mask, sign * value);
    return f;
}

AlternatingForm AlternatingForm::scalar(int dim, double value) {
    AlternatingForm f(dim, 0);
    f.c_[0] = value;
    return f;
}

double AlternatingForm::coefficient(std::uint8_t mask) const {
    const int j = mi::basis(dim_, deg_).index_of[mask];
    return j < 0 ? 0.0 : c_[j];
}

void AlternatingForm::set_coefficient(std::uint8_t mask, double value) {
    const int j = mi::basis(dim_, deg_).index_of[mask];
    if (j < 0) throw DomainError("set_coefficient: mask has wrong popcount");
    c_[j] = value;
}

AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o) {
    if (dim_ != o.dim_ || deg_ != o.deg_)
        throw DomainError("AlternatingForm sum: shape mismatch");
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

AlternatingForm& AlternatingForm::operator-=(const AlternatingForm& o) {
    if (dim_ != o.dim_ || deg_ != o.deg_)
        throw DomainError("AlternatingForm difference: shape mismatch");
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

AlternatingForm& AlternatingForm::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

AlternatingForm AlternatingForm::operator-() const {
    AlternatingForm r = *this;
    return r *= -1.0;
}

double AlternatingForm::coeff_norm() const {
    double s = 0.0;
    for (double x : c_) s += x * x;
    return std::sqrt(s);
}

double AlternatingForm::max_abs() const {
    double s = 0.0;
    for (double x : c_) s = std::max(s, std::abs(x));
    return s;
}

Eigen::VectorXd AlternatingForm::to_vector() const {
    return Eigen::Map<const Eigen::VectorXd>(c_.data(), size());
}

AlternatingForm AlternatingForm::from_vector(int dim, int degree,
                                             const Eigen::VectorXd& v) {
    AlternatingForm f(dim, degree);
    if (v.size() != f.size()) throw DomainError("from_vector: length mismatch");
    for (int i = 0; i < f.size(); ++i) f.c_[i] = v[i];
    return f;
}

MetricData make_metric(const Eigen::MatrixXd& gram, int orientation) {
    const int n = static_cast<int>(gram.rows());
    if (gram.cols() != n || n < 1 || n > mi::kMaxDim)
        throw DomainError("make_metric: gram must be square, n <= 8");
    if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + gram.cwiseAbs().maxCoeff()))
        throw DomainError("make_metric: gram not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw DomainError("make_metric: gram not positive definite");
    if (orientation != 1 && orientation != -1)
        throw DomainError("make_metric: orientation must be +-1");

    MetricData m;
    m.gram = 0.5 * (gram + gram.transpose());
    m.orientation = orientation;
    m.volume_form = AlternatingForm(n, n);
    m.volume_form[0] = orientation * std::sqrt(m.gram.determinant());
    return m;
}

MetricData euclidean_metric(int dim) {
    return make_metric(Eigen::MatrixXd::Identity(dim, dim));
}

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
    if (a.dimension() != b.dimension())
        throw DomainError("wedge: mismatched dimensions");
    const int n = a.dimension();
    const int k = a.degree() + b.degree();
    if (k > n)
        throw DegreeOverflowError("wedge: degree " + std::to_string(k) +
                                  " exceeds dimension " + std::to_string(n));
    AlternatingForm r(n, k);
    const auto& ta = mi::basis(n, a.degree());
    const auto& tb = mi::basis(n, b.degree());
    const auto& tr = mi::basis(n, k);
    for (int i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const std::uint8_t ma = ta.mask_of[i];
        for (int j = 0; j < b.size(); ++j) {
            const std::uint8_t mb = tb.mask_of[j];
            if (ma & mb) continue;
            r[tr.index_of[ma | mb]] += mi::merge_sign(ma, mb) * ai * b[j];
        }
    }
    return r;
}

AlternatingForm contract(const Eigen::VectorXd& v, const AlternatingForm& a) {
    if (v.size() != a.dimension())
        throw DomainError("contract: vector dimension mismatch");
    if (a.degree() == 0)
        throw DomainError("contract: cannot contract a 0-form");
    const int n = a.dimension();
    AlternatingForm r(n, a.degree() - 1);
    const auto& ta = mi::basis(n, a.degree());
    const auto& tr = mi::basis(n, a.degree() - 1);
    for (int j = 0; j < a.size(); ++j) {
        const double aj = a[j];
        if (aj == 0.0) continue;
        const std::uint8_t m = ta.mask_of[j];
        for (int i = 0; i < n; ++i) {
            if (!(m & (1u << i)) || v[i] == 0.0) continue;
            const std::uint8_t rest = m & ~static_cast<std::uint8_t>(1u << i);
            r[tr.index_of[rest]] += mi::removal_sign(m, i) * v[i] * aj;
        }
    }
    return r;
}

Eigen::MatrixXd form_gram(int dim, int degree, const MetricData& m) {
    const Eigen::MatrixXd ginv = m.gram.inverse();
    const auto& t = mi::basis(dim, degree);
    const int sz = mi::binomial(dim, degree);
    Eigen::MatrixXd G(sz, sz);
    Eigen::MatrixXd minor(degree, degree);
    std::vector<int> rows, cols;
    for (int i = 0; i < sz; ++i) {
        rows.clear();
        for (int b = 0; b < dim; ++b)
            if (t.mask_of[i] & (1u << b)) rows.push_back(b);
        for (int j = i; j < sz; ++j) {
            cols.clear();
            for (int b = 0; b < dim; ++b)
                if (t.mask_of[j] & (1u << b)) cols.push_back(b);
            for (int r = 0; r < degree; ++r)
                for (int c = 0; c < degree; ++c) minor(r, c) = ginv(rows[r], cols[c]);
            const double d = degree == 0 ? 1.0 : minor.determinant();
            G(i, j) = d;
            G(j, i) = d;
        }
    }
    return G;
}

double inner(const AlternatingForm& a, const AlternatingForm& b, const MetricData& m) {
    if (a.dimension() != b.dimension() || a.degree() != b.degree())
        throw DomainError("inner: shape mismatch");
    const Eigen::MatrixXd G = form_gram(a.dimension(), a.degree(), m);
    return a.to_vector().dot(G * b.to_vector());
}

double metric_norm(const AlternatingForm& a, const MetricData& m) {
    return std::sqrt(std::max(0.0, inner(a, a, m)));
}

AlternatingForm hodge_star(const AlternatingForm& a, const MetricData& m) {
    const int n = a.dimension();
    if (m.gram.rows() != n) throw DomainError("hodge_star: metric dimension mismatch");
    const int k = a.degree();
    const auto& tk = mi::basis(n, k);
    const auto& tc = mi::basis(n, n - k);
    // a ^ *b = <a,b> vol for all a: solve coefficient-wise against the
    // top-degree pairing e_I ^ e_{I^c} = merge_sign(I, I^c) e_{top}.
    const Eigen::VectorXd gb = form_gram(n, k, m) * a.to_vector();
    const double volc = m.orientation * std::sqrt(m.gram.determinant());
    AlternatingForm r(n, n - k);
    const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1u);
    for (int i = 0; i < a.size(); ++i) {
        const std::uint8_t mask = tk.mask_of[i];
        const std::uint8_t comp = full & ~mask;
        r[tc.index_of[comp]] = mi::merge_sign(mask, comp) * volc * gb[i];
    }
    return r;
}

MetricData metric_from_positive3form(const AlternatingForm& phi) {
    if (phi.dimension() != 7 || phi.degree() != 3)
        throw DomainError("metric_from_positive3form: expects a 3-form on R^7");
    Eigen::MatrixXd B(7, 7);
    std::vector<AlternatingForm> iphi;
    iphi.reserve(7);
    for (int i = 0; i < 7; ++i)
        iphi.push_back(contract(Eigen::VectorXd::Unit(7, i), phi));
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
            const double top = wedge(wedge(iphi[i], iphi[j]), phi)[0] / 6.0;
            B(i, j) = top;
            B(j, i) = top;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw NotPositiveError("metric_from_positive3form: 3-form is not positive");
    const double detB = B.determinant();
    const Eigen::MatrixXd g = std::pow(detB, -1.0 / 9.0) * B;
    return make_metric(g);
}

AlternatingForm phi0() {
    // e^{123} - e^1(e^{45}+e^{67}) - e^2(e^{46}+e^{75}) - e^3(e^{47}+e^{56}),
    // written on 0-based indices.
    AlternatingForm f(7, 3);
    f.set_coefficient(0b0000111, 1.0);   // 123
    f.set_coefficient(0b0011001, -1.0);  // 145
    f.set_coefficient(0b1100001, -1.0);  // 167
    f.set_coefficient(0b0101010, -1.0);  // 246
    f.set_coefficient(0b1010010, 1.0);   // 257  (= -e^2 ^ e^{75})
    f.set_coefficient(0b1001100, -1.0);  // 347
    f.set_coefficient(0b0110100, -1.0);  // 356
    return f;
}

}  // namespace g2strom
