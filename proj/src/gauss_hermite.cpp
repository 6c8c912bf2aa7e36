#include "imdd/gauss_hermite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace imdd {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix (zero diagonal,
// off-diagonal sqrt(k/2) for weight exp(-u^2)); weights come from the first
// eigenvector components. QL with implicit shifts on the tridiagonal matrix,
// accumulating only the first row of the eigenvector product.
struct Tridiag {
    std::vector<long double> diag;
    std::vector<long double> sub;   // sub[k] couples k and k+1
    std::vector<long double> first; // first row of the accumulated rotations
};

void ql_implicit(Tridiag& t) {
    const std::size_t n = t.diag.size();
    auto& d = t.diag;
    auto& w = t.first;
    std::vector<long double> e(n, 0.0L);
    for (std::size_t i = 0; i + 1 < n; ++i)
        e[i] = t.sub[i];

    const long double eps = 1e-19L;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const long double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m != l) {
                if (++iter == 60)
                    throw std::runtime_error("QL failed to converge");
                long double g = (d[l + 1] - d[l]) / (2.0L * e[l]);
                long double r = std::hypot(g, 1.0L);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                long double s = 1.0L, c = 1.0L, p = 0.0L;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    long double f = s * e[i];
                    const long double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0L) {
                        d[i + 1] -= p;
                        e[m] = 0.0L;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0L * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = w[i + 1];
                    w[i + 1] = s * w[i] + c * f;
                    w[i] = c * w[i] - s * f;
                }
                if (underflow)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0L;
            }
        } while (m != l);
    }
}

GhTable compute_table(int n) {
    if (n < 2)
        throw std::invalid_argument("Gauss-Hermite order must be >= 2");
    Tridiag t;
    t.diag.assign(n, 0.0L);
    t.sub.resize(n - 1);
    for (int k = 1; k < n; ++k)
        t.sub[k - 1] = std::sqrt(static_cast<long double>(k) / 2.0L);
    t.first.assign(n, 0.0L);
    t.first[0] = 1.0L;

    ql_implicit(t);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.diag[a] < t.diag[b]; });

    const long double mu0 = 1.7724538509055160272981674833411452L; // sqrt(pi)
    GhTable out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = static_cast<double>(t.diag[order[i]]);
        out.weights[i] = static_cast<double>(mu0 * t.first[order[i]] * t.first[order[i]]);
    }
    // the rule is symmetric; tidy up rounding asymmetries
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        const double x = 0.5 * (out.nodes[j] - out.nodes[i]);
        out.nodes[i] = -x;
        out.nodes[j] = x;
        const double w = 0.5 * (out.weights[i] + out.weights[j]);
        out.weights[i] = out.weights[j] = w;
    }
    if (n % 2 == 1)
        out.nodes[n / 2] = 0.0;
    return out;
}

} // namespace

const GhTable& gauss_hermite(int n) {
    static std::map<int, GhTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, compute_table(n)).first;
    return it->second;
}

} // namespace imdd
