#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "scvx/partition.hpp"
#include "scvx/rinf.hpp"

namespace scvx {

/// Truncation budget for countable sums.  Verdicts are certified by
/// closed-form tail analysis wherever the sequence family admits one; the
/// numeric fallback may give up and report Undetermined instead of guessing.
struct EvalPolicy {
    std::uint32_t max_terms = 64;
    Scalar abs_tol = Scalar::ratio(1, 1000000000);          // 1e-9
    Scalar divergence_threshold = Scalar(1000000000000LL);  // 1e12

    void validate() const {
        if (max_terms < 8) throw ValidationError("EvalPolicy: max_terms must be >= 8");
        if (abs_tol.sign() <= 0) throw ValidationError("EvalPolicy: abs_tol must be > 0");
        if (divergence_threshold.sign() <= 0)
            throw ValidationError("EvalPolicy: divergence_threshold must be > 0");
    }
};

/// A total 1-based sequence over RInf, restricted to the families whose
/// countable mixes admit closed-form analysis:
///   - a finite prefix followed by a constant tail,
///   - the divergence witness v_i = i*2^i + u,
///   - the oscillation witness v_i = (-2)^i * c.
class RInfSeq {
public:
    static RInfSeq prefix_tail(std::vector<RInf> prefix, RInf tail) {
        RInfSeq s;
        s.v_ = PrefixTail{std::move(prefix), tail};
        return s;
    }
    static RInfSeq constant(RInf v) { return prefix_tail({}, v); }
    static RInfSeq divergent_witness(const Scalar& u) {
        RInfSeq s;
        s.v_ = Divergent{u};
        return s;
    }
    static RInfSeq alternating_witness(const Scalar& c) {
        RInfSeq s;
        s.v_ = Alternating{c};
        return s;
    }

    RInf at(std::uint32_t i) const {
        if (i == 0) throw ValidationError("RInfSeq: indices are 1-based");
        if (const auto* pt = std::get_if<PrefixTail>(&v_)) {
            if (i <= pt->prefix.size()) return pt->prefix[i - 1];
            return pt->tail;
        }
        if (const auto* d = std::get_if<Divergent>(&v_)) {
            // i * 2^i + u
            return RInf::finite(Scalar(static_cast<long long>(i)) * Scalar(2).pow(i) + d->u);
        }
        const auto& a = std::get<Alternating>(v_);
        Scalar p = Scalar(-2).pow(i);
        return RInf::finite(p * a.c);
    }

    template <typename Visitor>
    decltype(auto) visit(Visitor&& vis) const {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

    struct PrefixTail {
        std::vector<RInf> prefix;
        RInf tail;
    };
    struct Divergent {
        Scalar u;
    };
    struct Alternating {
        Scalar c;
    };

private:
    std::variant<PrefixTail, Divergent, Alternating> v_;
};

/// Result of a countable mix: a value, or no certified verdict.
using MixResult = std::optional<RInf>;

/// Sum alpha_i * v_i over the partition of one.  Returns infinity when a
/// positively weighted index hits infinity, when the series diverges, or
/// when the partial sums have no limit; a finite value only when the limit
/// is certified by the closed form of the sequence family.
inline MixResult rinf_mix(const PartitionOfOne& alpha, const RInfSeq& seq,
                          const EvalPolicy& policy = {}) {
    policy.validate();

    if (!alpha.is_geometric()) {
        Scalar acc(0);
        for (const auto& e : alpha.entries()) {
            if (e.weight.sign() <= 0) continue;
            RInf v = seq.at(e.index);
            if (v.is_inf()) return RInf::infinity();
            acc += e.weight * v.value();
        }
        return RInf::finite(acc);
    }

    const Scalar& q = alpha.ratio();
    return seq.visit([&](const auto& s) -> MixResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RInfSeq::PrefixTail>) {
            // every index carries positive weight under a geometric partition
            for (const RInf& v : s.prefix)
                if (v.is_inf()) return RInf::infinity();
            if (s.tail.is_inf()) return RInf::infinity();
            Scalar acc(0);
            for (std::uint32_t i = 1; i <= s.prefix.size(); ++i)
                acc += alpha.weight(i) * s.prefix[i - 1].value();
            acc += alpha.tail_mass(static_cast<std::uint32_t>(s.prefix.size())) *
                   s.tail.value();
            return RInf::finite(acc);
        } else if constexpr (std::is_same_v<T, RInfSeq::Divergent>) {
            // terms (1-q) q^(i-1) (i 2^i + u): converges iff 2q < 1, with
            // sum 2(1-q)/(1-2q)^2 + u; otherwise the partial sums grow
            // without bound.
            Scalar twoq = Scalar(2) * q;
            if (!(twoq < Scalar(1))) return RInf::infinity();
            Scalar one(1);
            Scalar sum = Scalar(2) * (one - q) / ((one - twoq) * (one - twoq)) + s.u;
            return RInf::finite(sum);
        } else {
            // terms (1-q) q^(i-1) (-2)^i c: absolutely convergent iff 2q < 1
            // with sum -2c(1-q)/(1+2q); otherwise the partial sums oscillate
            // and the limit does not exist.
            if (s.c.is_zero()) return RInf::finite(Scalar(0));
            Scalar twoq = Scalar(2) * q;
            if (!(twoq < Scalar(1))) return RInf::infinity();
            Scalar one(1);
            Scalar sum = Scalar(-2) * s.c * (one - q) / (one + twoq);
            return RInf::finite(sum);
        }
    });
}

/// Truncated partial sum through index n (finite terms only); the
/// independent numeric route used by tests against the closed forms.
inline Scalar partial_sum(const PartitionOfOne& alpha, const RInfSeq& seq, std::uint32_t n) {
    Scalar acc(0);
    if (alpha.is_geometric()) {
        for (std::uint32_t i = 1; i <= n; ++i) {
            RInf v = seq.at(i);
            if (v.is_inf()) throw ValidationError("partial_sum: infinite term");
            acc += alpha.weight(i) * v.value();
        }
        return acc;
    }
    for (const auto& e : alpha.entries()) {
        if (e.index > n || e.weight.sign() <= 0) continue;
        RInf v = seq.at(e.index);
        if (v.is_inf()) throw ValidationError("partial_sum: infinite term");
        acc += e.weight * v.value();
    }
    return acc;
}

}  // namespace scvx
