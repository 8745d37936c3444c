#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "scvx/errors.hpp"

namespace scvx {

/// A finite measurable space: labelled carrier points and a sigma-algebra
/// stored as bitmasks over the carrier.  Always contains the empty set and
/// the carrier, closed under complement and union.
class FinMeasurableSpace {
public:
    static constexpr std::size_t kMaxPoints = 20;

    /// The discrete space: full powerset.
    static FinMeasurableSpace discrete(std::vector<std::string> labels) {
        check_labels(labels);
        if (labels.size() > 12)
            throw ValidationError("discrete: powerset too large, use generated()");
        FinMeasurableSpace sp;
        sp.labels_ = std::move(labels);
        std::uint64_t full = sp.full_mask();
        for (std::uint64_t m = 0; m <= full; ++m) sp.sigma_.push_back(m);
        sp.compute_atoms();
        return sp;
    }

    /// Closure of the generating sets under complement and (finite) union.
    static FinMeasurableSpace generated(std::vector<std::string> labels,
                                        const std::vector<std::uint64_t>& generators) {
        check_labels(labels);
        FinMeasurableSpace sp;
        sp.labels_ = std::move(labels);
        std::uint64_t full = sp.full_mask();
        std::set<std::uint64_t> s = {0, full};
        for (std::uint64_t g : generators) {
            if (g & ~full) throw ValidationError("sigma generator outside carrier");
            s.insert(g);
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::uint64_t> cur(s.begin(), s.end());
            for (std::uint64_t a : cur)
                if (s.insert(full & ~a).second) grew = true;
            cur.assign(s.begin(), s.end());
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (std::size_t j = i + 1; j < cur.size(); ++j)
                    if (s.insert(cur[i] | cur[j]).second) grew = true;
        }
        sp.sigma_.assign(s.begin(), s.end());
        sp.compute_atoms();
        return sp;
    }

    std::size_t size() const { return labels_.size(); }
    std::uint64_t full_mask() const {
        return size() == 64 ? ~0ull : ((1ull << size()) - 1);
    }

    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t index_of(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw UnknownAtom("unknown carrier point: " + label);
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool in_sigma(std::uint64_t mask) const {
        return std::binary_search(sigma_.begin(), sigma_.end(), mask);
    }

    const std::vector<std::uint64_t>& sigma() const { return sigma_; }

    /// The minimal nonempty measurable sets; they partition the carrier.
    const std::vector<std::uint64_t>& atoms() const { return atoms_; }

    /// Index of the sigma-atom containing carrier point i.
    std::size_t atom_of(std::size_t i) const {
        for (std::size_t k = 0; k < atoms_.size(); ++k)
            if (atoms_[k] & (1ull << i)) return k;
        throw Error("atom_of: unreachable");
    }

    std::string set_str(std::uint64_t mask) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i = 0; i < size(); ++i) {
            if (!(mask & (1ull << i))) continue;
            if (!first) out += ",";
            out += labels_[i];
            first = false;
        }
        return out + "}";
    }

    friend bool operator==(const FinMeasurableSpace& a, const FinMeasurableSpace& b) {
        return a.labels_ == b.labels_ && a.sigma_ == b.sigma_;
    }

private:
    static void check_labels(const std::vector<std::string>& labels) {
        if (labels.empty()) throw ValidationError("FinMeasurableSpace: empty carrier");
        if (labels.size() > kMaxPoints)
            throw ValidationError("FinMeasurableSpace: carrier too large");
        std::set<std::string> uniq(labels.begin(), labels.end());
        if (uniq.size() != labels.size())
            throw ValidationError("FinMeasurableSpace: duplicate labels");
    }

    void compute_atoms() {
        atoms_.clear();
        std::uint64_t full = full_mask();
        for (std::size_t i = 0; i < size(); ++i) {
            std::uint64_t atom = full;
            for (std::uint64_t s : sigma_)
                if (s & (1ull << i)) atom &= s;
            if (std::find(atoms_.begin(), atoms_.end(), atom) == atoms_.end())
                atoms_.push_back(atom);
        }
        std::sort(atoms_.begin(), atoms_.end());
    }

    std::vector<std::string> labels_;
    std::vector<std::uint64_t> sigma_;  // sorted
    std::vector<std::uint64_t> atoms_;
};

using MSpacePtr = std::shared_ptr<const FinMeasurableSpace>;

}  // namespace scvx
