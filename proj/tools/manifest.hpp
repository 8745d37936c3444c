#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scvx/algebra.hpp"
#include "scvx/components.hpp"

namespace scvxcli {

using json = nlohmann::ordered_json;
using namespace scvx;

inline Scalar parse_scalar(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (j.is_number_float()) return Scalar::real(j.get<double>());
    if (!j.is_string()) throw ValidationError("scalar: expected \"p/q\" string");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
        using boost::multiprecision::cpp_int;
        if (slash == std::string::npos) return Scalar(Rational(cpp_int(s)));
        cpp_int num(s.substr(0, slash));
        cpp_int den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("scalar: zero denominator in " + s);
        return Scalar(Rational(num, den));
    } catch (const std::runtime_error&) {
        throw ValidationError("scalar: cannot parse \"" + s + "\"");
    }
}

inline RInf parse_rinf(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return RInf::infinity();
    return RInf::finite(parse_scalar(j));
}

/// Named descriptor objects; every cross-reference by name resolves at load.
class Manifest {
public:
    struct Mixture {
        Space space;
        PartitionOfOne alpha;
        std::optional<PointSeq> seq;    // point-valued input
        std::optional<RInfSeq> rinf_seq;  // witness-family input on rinf
    };
    struct Functional {
        Space space;
        std::vector<RInf> values;
    };

    static Manifest load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open manifest: " + path);
        json root = json::parse(in);
        Manifest m;
        m.parse(root);
        return m;
    }

    static Manifest from_json(const json& root) {
        Manifest m;
        m.parse(root);
        return m;
    }

    const MSpacePtr& mspace(const std::string& name) const {
        return find(mspaces_, name, "mspaces");
    }
    const Space& space(const std::string& name) const {
        return find(spaces_, name, "spaces");
    }
    const Measure& measure(const std::string& name) const {
        return find(measures_, name, "measures");
    }
    const PointDist& dist(const std::string& name) const {
        return find(dists_, name, "dists");
    }
    const Mixture& mixture(const std::string& name) const {
        return find(mixtures_, name, "mixtures");
    }
    const MeasurableFn& function(const std::string& name) const {
        return find(functions_, name, "functions");
    }
    const MonotoneMap& map(const std::string& name) const {
        return find(maps_, name, "maps");
    }
    const AlgebraRule& rule(const std::string& name) const {
        return find(rules_, name, "rules");
    }
    const Functional& functional(const std::string& name) const {
        return find(functionals_, name, "functionals");
    }

private:
    template <typename M>
    static const typename M::mapped_type& find(const M& m, const std::string& name,
                                               const std::string& section) {
        auto it = m.find(name);
        if (it == m.end())
            throw ValidationError("manifest: no entry \"" + name + "\" in " + section);
        return it->second;
    }

    Space parse_space(const json& j) {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "rinf") return Space::rinf();
        if (kind == "disc") return Space::disc(j.at("n").get<std::uint32_t>());
        if (kind == "semidirect") {
            std::string order = j.value("order", "max-wins");
            if (order != "max-wins" && order != "min-wins")
                throw ValidationError("manifest: order must be max-wins or min-wins");
            return Space::semidirect(j.at("n").get<std::uint32_t>(),
                                     order == "max-wins" ? OrbitOrder::MaxWins
                                                         : OrbitOrder::MinWins);
        }
        if (kind == "product") {
            std::vector<Space> factors;
            for (const auto& f : j.at("factors"))
                factors.push_back(f.is_string() ? space(f.get<std::string>())
                                                : parse_space(f));
            return Space::product(std::move(factors));
        }
        if (kind == "inf-unit-interval") return Space::inf_unit_interval();
        if (kind == "sj") return Space::sj(j.at("j").get<std::uint32_t>());
        if (kind == "findist")
            return Space::fin_dist(mspace(j.at("mspace").get<std::string>()));
        throw ValidationError("manifest: unknown space kind \"" + kind + "\"");
    }

    Point parse_point(const Space& sp, const json& j) {
        if (j.contains("rinf")) return Point(parse_rinf(j.at("rinf")));
        if (j.contains("disc")) return Point(j.at("disc").get<std::uint32_t>());
        if (j.contains("semi"))
            return Point(Point::Semi{parse_rinf(j.at("semi").at("r")),
                                     j.at("semi").at("orbit").get<std::uint32_t>()});
        if (j.contains("tuple")) {
            const auto& factors = sp.as<Space::Product>().factors;
            const json& t = j.at("tuple");
            if (t.size() != factors.size())
                throw ValidationError("manifest: tuple arity mismatch");
            std::vector<Point> coords;
            for (std::size_t k = 0; k < factors.size(); ++k)
                coords.push_back(parse_point(factors[k], t[k]));
            return Point(std::move(coords));
        }
        if (j.contains("unit")) return Point(parse_scalar(j.at("unit")));
        if (j.contains("sj")) {
            const json& v = j.at("sj");
            if (v.is_string() && v.get<std::string>() == "inf-class")
                return Point(Point::SJPoint{true, {}});
            std::vector<Scalar> coords;
            for (const auto& c : v) coords.push_back(parse_scalar(c));
            return Point(Point::SJPoint{false, std::move(coords)});
        }
        if (j.contains("measure")) return Point(measure(j.at("measure").get<std::string>()));
        throw ValidationError("manifest: unrecognized point object");
    }

    PartitionOfOne parse_partition(const json& j) {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "finite") {
            std::vector<PartitionOfOne::Entry> entries;
            for (const auto& e : j.at("weights"))
                entries.push_back({e.at(0).get<std::uint32_t>(), parse_scalar(e.at(1))});
            return PartitionOfOne::finite_support(std::move(entries));
        }
        if (kind == "geometric") return PartitionOfOne::geometric(parse_scalar(j.at("q")));
        if (kind == "delta") return PartitionOfOne::delta(j.at("j").get<std::uint32_t>());
        throw ValidationError("manifest: unknown partition kind \"" + kind + "\"");
    }

    void parse(const json& root) {
        if (root.value("version", "") != "1")
            throw ValidationError("manifest: version \"1\" required");

        json sect_mspaces = root.value("mspaces", json::object());
        for (const auto& [name, j] : sect_mspaces.items()) {
            std::vector<std::string> labels;
            for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
            if (j.contains("generators")) {
                FinMeasurableSpace tmp = FinMeasurableSpace::discrete(labels);
                std::vector<std::uint64_t> gens;
                auto idx = [&](const std::string& l) { return tmp.index_of(l); };
                for (const auto& g : j.at("generators")) {
                    std::uint64_t mask = 0;
                    for (const auto& l : g) mask |= 1ull << idx(l.get<std::string>());
                    gens.push_back(mask);
                }
                mspaces_.emplace(name, std::make_shared<FinMeasurableSpace>(
                                           FinMeasurableSpace::generated(labels, gens)));
            } else {
                mspaces_.emplace(name, std::make_shared<FinMeasurableSpace>(
                                           FinMeasurableSpace::discrete(labels)));
            }
        }

        json sect_spaces = root.value("spaces", json::object());
        for (const auto& [name, j] : sect_spaces.items())
            spaces_.emplace(name, parse_space(j));

        json sect_measures = root.value("measures", json::object());
        for (const auto& [name, j] : sect_measures.items()) {
            const MSpacePtr& sp = mspace(j.at("mspace").get<std::string>());
            std::vector<Scalar> atom_w(sp->atoms().size(), Scalar(0));
            for (const auto& [label, w] : j.at("weights").items())
                atom_w[sp->atom_of(sp->index_of(label))] += parse_scalar(w);
            measures_.emplace(name, Measure::from_atom_weights(sp, std::move(atom_w)));
        }

        json sect_functions = root.value("functions", json::object());
        for (const auto& [name, j] : sect_functions.items()) {
            const MSpacePtr& sp = mspace(j.at("mspace").get<std::string>());
            std::vector<std::optional<RInf>> per_atom(sp->atoms().size());
            for (const auto& [label, v] : j.at("values").items()) {
                std::size_t k = sp->atom_of(sp->index_of(label));
                RInf val = parse_rinf(v);
                if (per_atom[k] && !(*per_atom[k] == val))
                    throw ValidationError("manifest: function \"" + name +
                                          "\" not constant on a sigma-atom");
                per_atom[k] = val;
            }
            std::vector<RInf> vals;
            for (auto& v : per_atom) {
                if (!v)
                    throw ValidationError("manifest: function \"" + name +
                                          "\" missing an atom value");
                vals.push_back(*v);
            }
            functions_.emplace(name, MeasurableFn(sp, std::move(vals)));
        }

        json sect_dists = root.value("dists", json::object());
        for (const auto& [name, j] : sect_dists.items()) {
            Space sp = j.at("space").is_string()
                           ? space(j.at("space").get<std::string>())
                           : parse_space(j.at("space"));
            std::vector<std::pair<Point, Scalar>> support;
            for (const auto& e : j.at("support"))
                support.emplace_back(parse_point(sp, e.at("point")),
                                     parse_scalar(e.at("weight")));
            dists_.emplace(name, PointDist(sp, std::move(support)));
        }

        json sect_mixtures = root.value("mixtures", json::object());
        for (const auto& [name, j] : sect_mixtures.items()) {
            Space sp = j.at("space").is_string()
                           ? space(j.at("space").get<std::string>())
                           : parse_space(j.at("space"));
            PartitionOfOne alpha = parse_partition(j.at("partition"));
            std::optional<PointSeq> seq;
            std::optional<RInfSeq> rseq;
            if (j.contains("sequence")) {
                if (!sp.is<Space::RInfSpace>())
                    throw ValidationError(
                        "manifest: witness sequences only apply to the rinf space");
                const json& s = j.at("sequence");
                std::string kind = s.at("kind").get<std::string>();
                if (kind == "divergent")
                    rseq = RInfSeq::divergent_witness(parse_scalar(s.at("u")));
                else if (kind == "alternating")
                    rseq = RInfSeq::alternating_witness(parse_scalar(s.at("c")));
                else
                    throw ValidationError("manifest: unknown sequence kind \"" + kind +
                                          "\"");
            } else {
                std::vector<Point> prefix;
                for (const auto& p : j.at("points")) prefix.push_back(parse_point(sp, p));
                std::optional<Point> tail;
                if (j.contains("tail")) tail = parse_point(sp, j.at("tail"));
                seq = PointSeq(std::move(prefix), std::move(tail));
            }
            mixtures_.emplace(name, Mixture{std::move(sp), std::move(alpha),
                                            std::move(seq), std::move(rseq)});
        }

        json sect_maps = root.value("maps", json::object());
        for (const auto& [name, j] : sect_maps.items()) {
            std::vector<std::uint32_t> table;
            for (const auto& t : j.at("table")) table.push_back(t.get<std::uint32_t>());
            maps_.emplace(name, MonotoneMap(j.at("n").get<std::uint32_t>(),
                                            j.at("m").get<std::uint32_t>(),
                                            std::move(table)));
        }

        json sect_rules = root.value("rules", json::object());
        for (const auto& [name, j] : sect_rules.items()) {
            std::string kind = j.at("kind").get<std::string>();
            if (kind != "barycenter")
                throw ValidationError(
                    "manifest: only barycenter rules are serializable");
            rules_.emplace(name, AlgebraRule::barycenter_of(
                                     space(j.at("space").get<std::string>())));
        }

        json sect_functionals = root.value("functionals", json::object());
        for (const auto& [name, j] : sect_functionals.items()) {
            Space sp = space(j.at("space").get<std::string>());
            std::vector<RInf> values;
            for (const auto& v : j.at("values")) values.push_back(parse_rinf(v));
            functionals_.emplace(name, Functional{std::move(sp), std::move(values)});
        }
    }

    std::map<std::string, MSpacePtr> mspaces_;
    std::map<std::string, Space> spaces_;
    std::map<std::string, Measure> measures_;
    std::map<std::string, PointDist> dists_;
    std::map<std::string, Mixture> mixtures_;
    std::map<std::string, MeasurableFn> functions_;
    std::map<std::string, MonotoneMap> maps_;
    std::map<std::string, AlgebraRule> rules_;
    std::map<std::string, Functional> functionals_;
};

/// Finite carrier for carrier-demanding commands.
inline SubCarrier carrier_of(const Space& sp) {
    if (sp.is<Space::Disc>()) return SubCarrier::of_disc(sp.as<Space::Disc>().n);
    if (sp.is<Space::FinDist>())
        return SubCarrier::dirac_grid(sp.as<Space::FinDist>().base);
    throw Unsupported("no finite carrier for " + sp.str());
}

inline json report_json(const LawReport& r) {
    json out;
    out["kind"] = r.kind;
    out["pass"] = r.pass;
    json ces = json::array();
    for (const auto& ce : r.counterexamples) {
        json c;
        c["input"] = ce.input;
        c["lhs"] = ce.lhs;
        c["rhs"] = ce.rhs;
        ces.push_back(std::move(c));
    }
    out["counterexamples"] = std::move(ces);
    return out;
}

}  // namespace scvxcli
