#include "wvg/cnf.hpp"

#include "wvg/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>

namespace wvg {

namespace {

// Literal order inside a clause: by variable, positive before negative.
bool literal_less(int a, int b) {
    const int va = std::abs(a), vb = std::abs(b);
    if (va != vb)
        return va < vb;
    return a > b; // positive (a > 0) first
}

} // namespace

CnfFormula CnfFormula::create(int num_vars, std::vector<std::vector<int>> clauses) {
    if (num_vars < 1)
        throw ParseError(ParseErrorKind::MalformedHeader, "formula needs at least one variable");
    std::vector<bool> occurs(static_cast<std::size_t>(num_vars) + 1, false);
    for (auto& clause : clauses) {
        std::sort(clause.begin(), clause.end(), literal_less);
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        if (clause.empty())
            throw ParseError(ParseErrorKind::EmptyClause, "empty clause");
        for (std::size_t i = 0; i < clause.size(); ++i) {
            const int lit = clause[i];
            const int var = std::abs(lit);
            if (lit == 0 || var > num_vars)
                throw ParseError(ParseErrorKind::LiteralOutOfRange,
                                 "literal " + std::to_string(lit) + " out of range 1.." +
                                     std::to_string(num_vars));
            if (i + 1 < clause.size() && std::abs(clause[i + 1]) == var)
                throw ParseError(ParseErrorKind::TautologicalClause,
                                 "clause contains both x" + std::to_string(var) + " and its negation");
            occurs[static_cast<std::size_t>(var)] = true;
        }
    }
    for (int v = 1; v <= num_vars; ++v)
        if (!occurs[static_cast<std::size_t>(v)])
            throw ParseError(ParseErrorKind::UnusedVariable,
                             "variable x" + std::to_string(v) + " occurs in no clause");
    CnfFormula f;
    f.num_vars_ = num_vars;
    f.clauses_ = std::move(clauses);
    return f;
}

std::vector<int> CnfFormula::clauses_with_literal(int var, bool positive) const {
    const int lit = positive ? var : -var;
    std::vector<int> out;
    for (int j = 0; j < num_clauses(); ++j) {
        const auto& clause = clauses_[static_cast<std::size_t>(j)];
        if (std::find(clause.begin(), clause.end(), lit) != clause.end())
            out.push_back(j + 1);
    }
    return out;
}

bool CnfFormula::evaluate(const std::vector<bool>& assignment) const {
    if (static_cast<int>(assignment.size()) != num_vars_)
        throw InvalidArgumentError("evaluate: assignment covers " +
                                   std::to_string(assignment.size()) + " of " +
                                   std::to_string(num_vars_) + " variables");
    for (const auto& clause : clauses_) {
        bool satisfied = false;
        for (int lit : clause) {
            const bool value = assignment[static_cast<std::size_t>(std::abs(lit) - 1)];
            if ((lit > 0) == value) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied)
            return false;
    }
    return true;
}

std::string CnfFormula::to_dimacs() const {
    std::ostringstream out;
    out << "p cnf " << num_vars_ << " " << num_clauses() << "\n";
    for (const auto& clause : clauses_) {
        for (int lit : clause)
            out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    // Skip comments until the problem line.
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        break;
    }
    if (token != "p")
        throw ParseError(ParseErrorKind::MalformedHeader, "missing \"p cnf\" header");
    std::string fmt;
    long long n = 0, m = 0;
    if (!(in >> fmt >> n >> m) || fmt != "cnf")
        throw ParseError(ParseErrorKind::MalformedHeader, "malformed \"p cnf\" header");
    if (n < 1 || m < 1)
        throw ParseError(ParseErrorKind::MalformedHeader,
                         "header must declare at least one variable and one clause");

    std::vector<std::vector<int>> clauses;
    std::vector<int> current;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        long long lit;
        try {
            std::size_t pos = 0;
            lit = std::stoll(token, &pos);
            if (pos != token.size())
                throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ParseError(ParseErrorKind::BadNumber, "bad literal token \"" + token + "\"");
        }
        if (lit == 0) {
            clauses.push_back(current);
            current.clear();
            continue;
        }
        if (std::llabs(lit) > n)
            throw ParseError(ParseErrorKind::LiteralOutOfRange,
                             "literal " + token + " out of range for " + std::to_string(n) +
                                 " variables");
        current.push_back(static_cast<int>(lit));
    }
    if (!current.empty())
        throw ParseError(ParseErrorKind::TrailingGarbage, "clause not terminated by 0");
    if (static_cast<long long>(clauses.size()) != m)
        throw ParseError(ParseErrorKind::MalformedHeader,
                         "header declares " + std::to_string(m) + " clauses, found " +
                             std::to_string(clauses.size()));
    return CnfFormula::create(static_cast<int>(n), std::move(clauses));
}

namespace {

struct ClauseMasks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

std::vector<ClauseMasks> clause_masks(const CnfFormula& f) {
    std::vector<ClauseMasks> masks(static_cast<std::size_t>(f.num_clauses()));
    for (int j = 0; j < f.num_clauses(); ++j)
        for (int lit : f.clauses()[static_cast<std::size_t>(j)]) {
            const int bit = std::abs(lit) - 1;
            if (lit > 0)
                masks[static_cast<std::size_t>(j)].pos |= (std::uint32_t(1) << bit);
            else
                masks[static_cast<std::size_t>(j)].neg |= (std::uint32_t(1) << bit);
        }
    return masks;
}

bool satisfies(const std::vector<ClauseMasks>& masks, std::uint32_t assignment) {
    for (const ClauseMasks& c : masks)
        if ((assignment & c.pos) == 0 && ((~assignment) & c.neg) == 0)
            return false;
    return true;
}

std::uint64_t count_models_u64(const CnfFormula& f, std::uint32_t prefix_bits, int k) {
    const auto masks = clause_masks(f);
    const int free_vars = f.num_vars() - k;
    std::uint64_t count = 0;
    for (std::uint64_t ext = 0; ext < (std::uint64_t(1) << free_vars); ++ext) {
        const std::uint32_t assignment = prefix_bits | (static_cast<std::uint32_t>(ext) << k);
        if (satisfies(masks, assignment))
            ++count;
    }
    return count;
}

PartialAssignment prefix_from_mask(std::uint32_t mask, int k) {
    PartialAssignment p;
    p.values.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        p.values[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    return p;
}

std::uint32_t mask_from_prefix(const PartialAssignment& p) {
    std::uint32_t mask = 0;
    for (int i = 0; i < p.length(); ++i)
        if (p.values[static_cast<std::size_t>(i)])
            mask |= (std::uint32_t(1) << i);
    return mask;
}

void check_brute_force_size(const CnfFormula& f) {
    if (f.num_vars() > kMaxBruteForceVars)
        throw CapabilityError("brute-force model counting capped at " +
                              std::to_string(kMaxBruteForceVars) + " variables, formula has " +
                              std::to_string(f.num_vars()));
}

void check_k(const CnfFormula& f, int k) {
    if (k < 0 || k > f.num_vars())
        throw InvalidArgumentError("k = " + std::to_string(k) + " out of range 0.." +
                                   std::to_string(f.num_vars()));
}

template <typename Accept>
SatDecision first_prefix_such_that(const CnfFormula& f, int k, Accept accept) {
    check_brute_force_size(f);
    check_k(f, k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        const std::uint64_t count = count_models_u64(f, static_cast<std::uint32_t>(mask), k);
        if (accept(count))
            return SatDecision{true, prefix_from_mask(static_cast<std::uint32_t>(mask), k)};
    }
    return SatDecision{false, std::nullopt};
}

} // namespace

BigInt count_models(const CnfFormula& formula, const PartialAssignment& prefix) {
    check_brute_force_size(formula);
    if (prefix.length() > formula.num_vars())
        throw InvalidArgumentError("prefix longer than variable count");
    return BigInt(count_models_u64(formula, mask_from_prefix(prefix), prefix.length()));
}

SatDecision decide_emajsat(const CnfFormula& formula, int k) {
    const int free_vars = formula.num_vars() - k;
    // count > 2^(n-k-1), phrased as 2*count > 2^(n-k) to stay integral at k = n.
    return first_prefix_such_that(formula, k, [&](std::uint64_t count) {
        return 2 * count > (std::uint64_t(1) << free_vars);
    });
}

SatDecision decide_eminsat(const CnfFormula& formula, int k) {
    const int free_vars = formula.num_vars() - k;
    return first_prefix_such_that(formula, k, [&](std::uint64_t count) {
        return 2 * count <= (std::uint64_t(1) << free_vars);
    });
}

SatDecision decide_eexasat(const CnfFormula& formula, int k, const BigInt& ell) {
    if (ell < 0)
        throw InvalidArgumentError("ell must be nonnegative");
    return first_prefix_such_that(formula, k, [&](std::uint64_t count) {
        return BigInt(count) == ell;
    });
}

namespace {

// All admissible clauses over variables 1..n: nonempty variable subsets with
// one polarity per variable, literals sorted by variable. Canonical order.
std::vector<std::vector<int>> all_clauses(int n) {
    std::vector<std::vector<int>> clauses;
    for (std::uint32_t vars = 1; vars < (std::uint32_t(1) << n); ++vars) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if ((vars >> v) & 1)
                members.push_back(v + 1);
        const auto count = members.size();
        for (std::uint32_t signs = 0; signs < (std::uint32_t(1) << count); ++signs) {
            std::vector<int> clause;
            clause.reserve(count);
            for (std::size_t i = 0; i < count; ++i)
                clause.push_back(((signs >> i) & 1) ? -members[i] : members[i]);
            clauses.push_back(std::move(clause));
        }
    }
    std::sort(clauses.begin(), clauses.end());
    return clauses;
}

bool covers_all_vars(int n, const std::vector<std::vector<int>>& clauses) {
    std::vector<bool> occurs(static_cast<std::size_t>(n) + 1, false);
    for (const auto& clause : clauses)
        for (int lit : clause)
            occurs[static_cast<std::size_t>(std::abs(lit))] = true;
    for (int v = 1; v <= n; ++v)
        if (!occurs[static_cast<std::size_t>(v)])
            return false;
    return true;
}

} // namespace

std::vector<CnfFormula> enumerate_formulas(int n, int max_m) {
    if (n < 1 || n > 5)
        throw InvalidArgumentError("enumerate_formulas supports 1..5 variables");
    const auto clauses = all_clauses(n);
    const int total = static_cast<int>(clauses.size());
    std::vector<CnfFormula> out;
    std::vector<int> pick;
    auto emit = [&]() {
        std::vector<std::vector<int>> chosen;
        chosen.reserve(pick.size());
        for (int idx : pick)
            chosen.push_back(clauses[static_cast<std::size_t>(idx)]);
        if (covers_all_vars(n, chosen))
            out.push_back(CnfFormula::create(n, std::move(chosen)));
    };
    auto rec = [&](auto&& self, int start, int m) -> void {
        if (static_cast<int>(pick.size()) == m) {
            emit();
            return;
        }
        for (int i = start; i < total; ++i) {
            pick.push_back(i);
            self(self, i + 1, m);
            pick.pop_back();
        }
    };
    // Clause-set combinations grouped by clause count, lexicographic within.
    for (int m = 1; m <= max_m; ++m)
        rec(rec, 0, m);
    return out;
}

std::vector<CnfFormula> sample_formulas(int n, int m, int count, unsigned seed) {
    if (n < 1 || n > 16)
        throw InvalidArgumentError("sample_formulas supports 1..16 variables");
    const auto clauses = all_clauses(n);
    if (m < 1 || m > static_cast<int>(clauses.size()))
        throw InvalidArgumentError("sample_formulas: clause count out of range");
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick_clause(0, static_cast<int>(clauses.size()) - 1);
    std::set<std::vector<int>> seen; // canonical index sets
    std::vector<CnfFormula> out;
    const int max_attempts = 500 * count + 1000;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count;
         ++attempt) {
        std::set<int> indices;
        while (static_cast<int>(indices.size()) < m)
            indices.insert(pick_clause(rng));
        std::vector<int> key(indices.begin(), indices.end());
        if (!seen.insert(key).second)
            continue;
        std::vector<std::vector<int>> chosen;
        for (int idx : key)
            chosen.push_back(clauses[static_cast<std::size_t>(idx)]);
        if (!covers_all_vars(n, chosen))
            continue;
        out.push_back(CnfFormula::create(n, std::move(chosen)));
    }
    return out;
}

} // namespace wvg
