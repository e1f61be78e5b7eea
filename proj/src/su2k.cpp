#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "model_build.hpp"
#include "tqp/anyon_model.hpp"
#include "tqp/errors.hpp"

namespace tqp {

namespace {

// Quantum-integer arithmetic at q = exp(2 pi i / (k+2)):
// [n] = sin(pi n / (k+2)) / sin(pi / (k+2)), [n]! = [1][2]...[n].
// [n] > 0 for 1 <= n <= k+1 and [k+2] = 0, so factorials vanish from
// n = k+2 onward; the truncated Racah sum below never divides by them.
struct QNumbers {
    int k;
    std::vector<double> fact; // fact[n] = [n]!, n = 0 .. 2k+2

    explicit QNumbers(int level) : k(level) {
        const double r = static_cast<double>(k + 2);
        const double s1 = std::sin(std::numbers::pi / r);
        fact.resize(2 * k + 3);
        fact[0] = 1.0;
        for (int n = 1; n <= 2 * k + 2; ++n) {
            const double qn = std::sin(std::numbers::pi * n / r) / s1;
            fact[n] = fact[n - 1] * qn;
        }
    }

    double qint(int n) const {
        const double r = static_cast<double>(k + 2);
        return std::sin(std::numbers::pi * n / r) / std::sin(std::numbers::pi / r);
    }

    // All label arguments below are in 2j units; admissible triples have even
    // sums, so the halved combinations are integers.
    double triangle(int a, int b, int c) const {
        const int x = (-a + b + c) / 2;
        const int y = (a - b + c) / 2;
        const int z = (a + b - c) / 2;
        const int w = (a + b + c) / 2 + 1;
        return std::sqrt(fact[x] * fact[y] * fact[z] / fact[w]);
    }

    // q-deformed 6j symbol {a b e; c d f} via the Racah sum. The z range is
    // capped at k: beyond it the numerator factorial [z+1]! vanishes.
    double sixj(int a, int b, int e, int c, int d, int f) const {
        const int t1 = (a + b + e) / 2;
        const int t2 = (a + d + f) / 2;
        const int t3 = (c + b + f) / 2;
        const int t4 = (c + d + e) / 2;
        const int q1 = (a + b + c + d) / 2;
        const int q2 = (b + e + d + f) / 2;
        const int q3 = (e + a + f + c) / 2;
        const int zlo = std::max(std::max(t1, t2), std::max(t3, t4));
        const int zhi = std::min(std::min(q1, q2), std::min(q3, k));
        double sum = 0.0;
        for (int z = zlo; z <= zhi; ++z) {
            const double num = (z % 2 == 0 ? 1.0 : -1.0) * fact[z + 1];
            const double den = fact[z - t1] * fact[z - t2] * fact[z - t3] * fact[z - t4] *
                               fact[q1 - z] * fact[q2 - z] * fact[q3 - z];
            sum += num / den;
        }
        return triangle(a, b, e) * triangle(e, c, d) * triangle(b, c, f) * triangle(a, f, d) * sum;
    }
};

} // namespace

AnyonModel su2k_model(int k) {
    if (k < 1 || k > 16) {
        std::ostringstream os;
        os << "su2k_model: level k = " << k << " outside the supported range 1..16";
        throw LevelOutOfRange(os.str());
    }

    AnyonModel model;
    {
        std::ostringstream os;
        os << "su2_" << k;
        model.name = os.str();
    }
    model.level = k;

    // Labels are a = 2j in {0..k}; fusion is truncated Clebsch-Gordan:
    // N(a,b,c) = 1 iff |a-b| <= c <= min(a+b, 2k-a-b) and c = a+b (mod 2).
    FusionRules rules;
    rules.num_labels = k + 1;
    rules.unit = 0;
    rules.dual.resize(k + 1);
    for (label_t a = 0; a <= k; ++a)
        rules.dual[a] = a;
    rules.n.assign(static_cast<std::size_t>(k + 1) * (k + 1) * (k + 1), 0);
    for (label_t a = 0; a <= k; ++a)
        for (label_t b = 0; b <= k; ++b)
            for (label_t c = 0; c <= k; ++c) {
                const bool parity = (a + b - c) % 2 == 0;
                const bool range = c >= std::abs(a - b) && c <= std::min(a + b, 2 * k - a - b);
                if (parity && range)
                    rules.set_N(a, b, c, 1);
            }
    rules.rebuild_products();
    model.rules = std::move(rules);

    model.label_names.resize(k + 1);
    for (label_t a = 0; a <= k; ++a)
        model.label_names[a] = std::to_string(a);

    const QNumbers qn(k);
    const double pi = std::numbers::pi;

    // Unitary-gauge F from the 6j symbol:
    // [F^{abc}_d]_{ef} = (-1)^{(a+b+c+d)/2} sqrt([e+1][f+1]) {a b e; c d f}_q.
    auto fsym = [&](label_t a, label_t b, label_t c, label_t d, label_t e, label_t f) -> cplx {
        const int exponent = (a + b + c + d) / 2;
        const double sign = exponent % 2 == 0 ? 1.0 : -1.0;
        const double value =
            sign * std::sqrt(qn.qint(e + 1) * qn.qint(f + 1)) * qn.sixj(a, b, e, c, d, f);
        return cplx(value, 0.0);
    };

    // R^{ab}_c = (-1)^{(a+b-c)/2} q^{(c(c+2) - a(a+2) - b(b+2))/8}.
    auto rsym = [&](label_t a, label_t b, label_t c) -> cplx {
        const int exponent = (a + b - c) / 2;
        const double sign = ((exponent % 2) + 2) % 2 == 0 ? 1.0 : -1.0;
        const double theta =
            2.0 * pi * static_cast<double>(c * (c + 2) - a * (a + 2) - b * (b + 2)) /
            (8.0 * static_cast<double>(k + 2));
        return sign * std::polar(1.0, theta);
    };

    detail::build_tables(model, fsym, rsym);
    return model;
}

} // namespace tqp
