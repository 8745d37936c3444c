#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "scvx/scalar.hpp"

namespace scvx {

/// A countable partition of one: nonnegative weights summing to 1.
/// Either finitely supported (explicit 1-based index/weight pairs) or the
/// geometric family w_i = (1-q) q^(i-1), i >= 1, for a ratio q in (0,1).
class PartitionOfOne {
public:
    struct Entry {
        std::uint32_t index;  // 1-based
        Scalar weight;
    };

    static PartitionOfOne finite_support(std::vector<Entry> entries) {
        Scalar sum(0);
        bool all_exact = true;
        std::uint32_t prev = 0;
        for (const Entry& e : entries) {
            if (e.index == 0) throw ValidationError("PartitionOfOne: indices are 1-based");
            if (e.index <= prev)
                throw ValidationError("PartitionOfOne: indices must be strictly increasing");
            prev = e.index;
            if (e.weight.sign() < 0) throw ValidationError("PartitionOfOne: negative weight");
            all_exact = all_exact && e.weight.exact();
            sum += e.weight;
        }
        if (all_exact) {
            if (sum != Scalar(1)) throw ValidationError("PartitionOfOne: weights must sum to 1");
        } else if ((sum - Scalar(1)).abs() > Scalar::ratio(1, 1000000000000)) {
            throw ValidationError("PartitionOfOne: weights must sum to 1 within 1e-12");
        }
        PartitionOfOne p;
        p.v_ = Finite{std::move(entries)};
        return p;
    }

    static PartitionOfOne geometric(const Scalar& q) {
        if (q.sign() <= 0 || !(q < Scalar(1)))
            throw ValidationError("PartitionOfOne: geometric ratio must be in (0,1)");
        PartitionOfOne p;
        p.v_ = Geometric{q};
        return p;
    }

    /// Weight 1 at index j, 0 elsewhere.
    static PartitionOfOne delta(std::uint32_t j) {
        return finite_support({Entry{j, Scalar(1)}});
    }

    bool is_geometric() const { return std::holds_alternative<Geometric>(v_); }

    const Scalar& ratio() const { return std::get<Geometric>(v_).q; }

    const std::vector<Entry>& entries() const { return std::get<Finite>(v_).entries; }

    Scalar weight(std::uint32_t i) const {
        if (i == 0) throw ValidationError("PartitionOfOne: indices are 1-based");
        if (is_geometric()) {
            const Scalar& q = ratio();
            return (Scalar(1) - q) * q.pow(i - 1);
        }
        for (const Entry& e : entries())
            if (e.index == i) return e.weight;
        return Scalar(0);
    }

    /// Exact mass remaining past the first n indices.
    Scalar tail_mass(std::uint32_t n) const {
        if (is_geometric()) return ratio().pow(n);
        Scalar m(0);
        for (const Entry& e : entries())
            if (e.index > n) m += e.weight;
        return m;
    }

private:
    struct Finite {
        std::vector<Entry> entries;
    };
    struct Geometric {
        Scalar q;
    };
    std::variant<Finite, Geometric> v_;
};

}  // namespace scvx
