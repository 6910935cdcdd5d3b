#pragma once

#include <vector>

#include "sicmub/operators.hpp"

namespace sicmub {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;  // first offending item on failure
};

struct CheckReport {
    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Certifies the defining identities of the ray set, exactly:
//   (a) the nine SIC projectors sum to 3*1,
//   (b) all 36 distinct SIC pairs have squared overlap 1/4,
//   (c) each basis is orthonormal after normalization,
//   (d) all 54 cross-basis pairs have squared overlap 1/3.
// Failures are report entries, never exceptions.
inline CheckReport verify_sic_mub(const Configuration& config) {
    CheckReport report;

    {
        Check c{"sic_sum_projectors", false, {}};
        auto ids = Configuration::sic_ids();
        OperatorM3 sum = sum_projectors(config, ids);
        c.pass = sum == OperatorM3::scalar(3);
        if (!c.pass) c.detail = "sum of SIC projectors is not 3*identity";
        report.checks.push_back(std::move(c));
    }

    {
        Check c{"sic_pair_overlaps", true, {}};
        const Rational expected(1, 4);
        for (int i = 0; i < kSicCount && c.pass; ++i)
            for (int j = i + 1; j < kSicCount; ++j) {
                Rational got = overlap_squared(config.ray(i), config.ray(j));
                if (got != expected) {
                    c.pass = false;
                    c.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") overlap " + got.str();
                    break;
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        Check c{"bases_orthonormal", true, {}};
        for (const Basis& basis : config.bases) {
            for (int a = 0; a < 3 && c.pass; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    const Ray& u = config.ray(basis.members[static_cast<std::size_t>(a)]);
                    const Ray& v = config.ray(basis.members[static_cast<std::size_t>(b)]);
                    if (!inner_product(u, v).is_zero()) {
                        c.pass = false;
                        c.detail = "basis " + std::string(basis_name(basis.name)) + " members " +
                                   std::to_string(u.id) + "," + std::to_string(v.id) + " not orthogonal";
                        break;
                    }
                }
            if (!c.pass) break;
        }
        report.checks.push_back(std::move(c));
    }

    {
        Check c{"mub_cross_overlaps", true, {}};
        const Rational expected(1, 3);
        for (std::size_t p = 0; p < 4 && c.pass; ++p)
            for (std::size_t r = p + 1; r < 4 && c.pass; ++r)
                for (int a = 0; a < 3 && c.pass; ++a)
                    for (int b = 0; b < 3; ++b) {
                        const Ray& u = config.ray(config.bases[p].members[static_cast<std::size_t>(a)]);
                        const Ray& v = config.ray(config.bases[r].members[static_cast<std::size_t>(b)]);
                        Rational got = overlap_squared(u, v);
                        if (got != expected) {
                            c.pass = false;
                            c.detail = "pair (" + std::to_string(u.id) + "," + std::to_string(v.id) + ") overlap " + got.str();
                            break;
                        }
                    }
        report.checks.push_back(std::move(c));
    }

    return report;
}

}  // namespace sicmub
