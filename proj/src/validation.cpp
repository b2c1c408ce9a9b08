#include "scidiv/validation.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace scidiv {

namespace {

// Mean of lookups over the index cross product; same-journal pairs are
// dropped when include_diagonal is false. An empty pair set means zero.
double mean_over(const SimilarityMatrix& matrix, const std::vector<std::uint32_t>& set1,
                 const std::vector<std::uint32_t>& set2, bool include_diagonal) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const std::uint32_t a : set1) {
        for (const std::uint32_t b : set2) {
            if (!include_diagonal && a == b) continue;
            sum += matrix.lookup_index(a, b);
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

// Classified journals present in the matrix, grouped by domain, indexes
// ascending (lexicographic journal order).
std::map<std::string, std::vector<std::uint32_t>> domain_members(const SimilarityMatrix& matrix,
                                                                 const Classification& cls) {
    std::map<std::string, std::vector<std::uint32_t>> members;
    for (const auto& [journal, domain] : cls.domain_of)
        if (const auto idx = matrix.index_of(journal)) members[domain].push_back(*idx);
    for (auto& [domain, idxs] : members) std::sort(idxs.begin(), idxs.end());
    return members;
}

void print_value(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

Classification load_classification(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing classification header", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "journal_id,domain")
        throw ParseError("bad header, expected 'journal_id,domain'", 1);

    Classification cls;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected 2 columns", lineno);
        std::string journal = line.substr(0, comma);
        std::string domain = line.substr(comma + 1);
        if (journal.empty()) throw ParseError("empty journal id", lineno);
        if (domain.empty()) throw ParseError("empty domain label", lineno);
        if (!cls.domain_of.emplace(journal, domain).second)
            throw DuplicateError("line " + std::to_string(lineno) + ": duplicate journal '" +
                                 journal + "'");
        cls.domains.insert(std::move(domain));
    }
    return cls;
}

std::map<std::string, DomainStats> within_domain_report(const SimilarityMatrix& matrix,
                                                        const Classification& cls,
                                                        bool include_diagonal) {
    const auto members = domain_members(matrix, cls);

    std::vector<std::uint32_t> all;
    for (const auto& [domain, idxs] : members) all.insert(all.end(), idxs.begin(), idxs.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.empty())
        throw DomainError("no classified journal appears in the matrix");

    const double global = mean_over(matrix, all, all, include_diagonal);

    std::map<std::string, DomainStats> report;
    for (const auto& [domain, idxs] : members) {
        DomainStats stats;
        stats.within_avg = mean_over(matrix, idxs, idxs, include_diagonal);
        stats.global_avg = global;
        if (global != 0.0) stats.ratio = stats.within_avg / global;
        report.emplace(domain, stats);
    }
    return report;
}

std::map<std::pair<std::string, std::string>, double> domain_similarity_matrix(
    const SimilarityMatrix& matrix, const Classification& cls) {
    const auto members = domain_members(matrix, cls);
    if (members.empty())
        throw DomainError("no classified journal appears in the matrix");

    std::map<std::pair<std::string, std::string>, double> out;
    for (auto it1 = members.begin(); it1 != members.end(); ++it1)
        for (auto it2 = it1; it2 != members.end(); ++it2)
            out[{it1->first, it2->first}] = mean_over(matrix, it1->second, it2->second, true);
    return out;
}

std::vector<std::pair<JournalId, double>> generalist_scores(const SimilarityMatrix& matrix) {
    const std::size_t n = matrix.journals().size();
    if (n == 0) throw DomainError("generalist_scores: empty matrix");

    std::vector<double> sums(n, 0.0);
    for (const auto& e : matrix.sorted_entries()) {
        if (e.a == e.b) continue;  // self-similarity measures fidelity, not breadth
        sums[e.a] += e.value;
        sums[e.b] += e.value;
    }

    std::vector<std::pair<JournalId, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(matrix.journals()[i],
                         n > 1 ? sums[i] / static_cast<double>(n - 1) : 0.0);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    return out;
}

void write_domain_report_csv(const std::map<std::string, DomainStats>& report,
                             std::ostream& out) {
    out << "domain,within_avg,global_avg,ratio\n";
    for (const auto& [domain, stats] : report) {
        out << domain << ',';
        print_value(out, stats.within_avg);
        out << ',';
        print_value(out, stats.global_avg);
        out << ',';
        if (stats.ratio) print_value(out, *stats.ratio);
        out << '\n';
    }
}

void write_domain_report_json(const std::map<std::string, DomainStats>& report,
                              const std::vector<std::pair<JournalId, double>>& generalists,
                              std::ostream& out) {
    nlohmann::json domains = nlohmann::json::object();
    for (const auto& [domain, stats] : report) {
        nlohmann::json entry{{"within_avg", stats.within_avg},
                             {"global_avg", stats.global_avg}};
        if (stats.ratio) entry["ratio"] = *stats.ratio;
        domains[domain] = entry;
    }
    nlohmann::json gen = nlohmann::json::array();
    for (const auto& [journal, score] : generalists)
        gen.push_back({{"journal_id", journal}, {"score", score}});
    out << nlohmann::json{{"domains", domains}, {"generalists", gen}}.dump(2) << '\n';
}

void write_domain_matrix_csv(const std::map<std::pair<std::string, std::string>, double>& matrix,
                             std::ostream& out) {
    out << "domain_a,domain_b,value\n";
    for (const auto& [key, value] : matrix) {
        out << key.first << ',' << key.second << ',';
        print_value(out, value);
        out << '\n';
    }
}

}  // namespace scidiv
