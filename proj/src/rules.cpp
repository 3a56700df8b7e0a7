#include "gridbit/rules.hpp"

#include <cstddef>

#include "gridbit/errors.hpp"

namespace gridbit {

DecisionRule DecisionRule::parse(const std::string& text) {
    if (text == "and") return and_rule();
    if (text == "or") return or_rule();
    if (text == "majority") return majority();
    const std::string prefix = "k-out-of-n:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string arg = text.substr(prefix.size());
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw ValidationError("rule: bad k in '" + text + "'");
        }
        if (k < 1) throw ValidationError("rule: k must be >= 1 in '" + text + "'");
        return k_out_of_n(k);
    }
    throw ValidationError("rule: unknown rule '" + text +
                          "' (expected and, or, majority, k-out-of-n:<k>)");
}

std::string DecisionRule::name() const {
    switch (kind) {
        case RuleKind::And: return "and";
        case RuleKind::Or: return "or";
        case RuleKind::Majority: return "majority";
        case RuleKind::KOutOfN: return "k-out-of-n:" + std::to_string(k);
    }
    return "?";
}

void DecisionRule::validate_arity(int inputs) const {
    if (inputs < 1) {
        throw ValidationError("rule: needs at least one input");
    }
    if (kind == RuleKind::KOutOfN && (k < 1 || k > inputs)) {
        throw ValidationError("rule: k-out-of-n with k=" + std::to_string(k) +
                              " outside [1, " + std::to_string(inputs) + "]");
    }
}

RuleOutcome evaluate(const DecisionRule& rule, std::span<const std::uint8_t> bits) {
    const int m = static_cast<int>(bits.size());
    rule.validate_arity(m);
    int ones = 0;
    for (std::uint8_t b : bits) ones += b != 0;
    switch (rule.kind) {
        case RuleKind::And:
            return ones == m ? RuleOutcome::One : RuleOutcome::Zero;
        case RuleKind::Or:
            return ones >= 1 ? RuleOutcome::One : RuleOutcome::Zero;
        case RuleKind::Majority:
            if (2 * ones > m) return RuleOutcome::One;
            if (2 * ones < m) return RuleOutcome::Zero;
            return RuleOutcome::Tie;
        case RuleKind::KOutOfN:
            return ones >= rule.k ? RuleOutcome::One : RuleOutcome::Zero;
    }
    throw ValidationError("rule: unreachable kind");
}

int resolve(RuleOutcome outcome, RandomStream& rng) {
    switch (outcome) {
        case RuleOutcome::Zero: return 0;
        case RuleOutcome::One: return 1;
        case RuleOutcome::Tie: return rng.next_double() < 0.5 ? 1 : 0;
    }
    return 0;
}

std::vector<double> poisson_binomial_pmf(std::span<const double> one_probs) {
    // Iterative convolution over the count of ones; exact and stable, O(m^2).
    std::vector<double> pmf(one_probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t absorbed = 0;
    for (double q : one_probs) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError("probability outside [0, 1]");
        }
        ++absorbed;
        for (std::size_t c = absorbed; c-- > 0;) {
            pmf[c + 1] += pmf[c] * q;
            pmf[c] *= 1.0 - q;
        }
    }
    return pmf;
}

namespace {

double product_of_ones(std::span<const double> one_probs) {
    double prod = 1.0;
    for (double q : one_probs) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError("probability outside [0, 1]");
        }
        prod *= q;
    }
    return prod;
}

double product_of_zeros(std::span<const double> one_probs) {
    double prod = 1.0;
    for (double q : one_probs) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError("probability outside [0, 1]");
        }
        prod *= 1.0 - q;
    }
    return prod;
}

// P(C >= k). Sums whichever tail has fewer terms; the short-tail choice makes
// k = 1 reduce to exactly the OR product and k = m to exactly the AND product.
double count_at_least(const std::vector<double>& pmf, int k) {
    const int m = static_cast<int>(pmf.size()) - 1;
    const int upper_terms = m - k + 1;
    const int lower_terms = k;
    if (lower_terms <= upper_terms) {
        double below = 0.0;
        for (int c = 0; c < k; ++c) below += pmf[static_cast<std::size_t>(c)];
        return 1.0 - below;
    }
    double tail = 0.0;
    for (int c = k; c <= m; ++c) tail += pmf[static_cast<std::size_t>(c)];
    return tail;
}

} // namespace

double output_one_prob(const DecisionRule& rule, std::span<const double> one_probs) {
    const int m = static_cast<int>(one_probs.size());
    rule.validate_arity(m);
    switch (rule.kind) {
        case RuleKind::And:
            return product_of_ones(one_probs);
        case RuleKind::Or:
            return 1.0 - product_of_zeros(one_probs);
        case RuleKind::Majority: {
            const std::vector<double> pmf = poisson_binomial_pmf(one_probs);
            double p = 0.0;
            for (int c = m; 2 * c > m; --c) p += pmf[static_cast<std::size_t>(c)];
            if (m % 2 == 0) p += 0.5 * pmf[static_cast<std::size_t>(m / 2)];
            return p;
        }
        case RuleKind::KOutOfN: {
            if (rule.k == 1) {
                return 1.0 - product_of_zeros(one_probs); // == OR, bit for bit
            }
            if (rule.k == m) {
                return product_of_ones(one_probs); // == AND, bit for bit
            }
            return count_at_least(poisson_binomial_pmf(one_probs), rule.k);
        }
    }
    throw ValidationError("rule: unreachable kind");
}

} // namespace gridbit
