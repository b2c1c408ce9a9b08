#include "scidiv/diversity.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace scidiv {

namespace {

struct ListTerm {
    std::optional<std::uint32_t> journal;  // index in the matrix, if known there
    double weight = 0.0;
    int year = 0;
};

// Weight of one list item under the matrix's page interpretation.
double item_weight(const Corpus& corpus, const Article& a, PageMode mode) {
    long long den = static_cast<long long>(a.authors.size());
    if (mode == PageMode::journal_normalized) {
        const __int128 wide = static_cast<__int128>(den) * corpus.page_total(a.journal);
        if (wide > static_cast<__int128>(0x7fffffffffffffffLL))
            throw DomainError("page totals overflow the weight denominator");
        den = static_cast<long long>(wide);
    }
    return Rational(a.pages, den).to_double();
}

std::vector<ListTerm> make_terms(const PublicationList& list, const SimilarityMatrix& matrix,
                                 const Corpus& corpus) {
    std::vector<ListTerm> terms;
    terms.reserve(list.items.size());
    for (const ArticleId& id : list.items) {
        const Article& a = corpus.article(id);  // LookupError on unknown ids
        terms.push_back({matrix.index_of(a.journal),
                         item_weight(corpus, a, matrix.config().page_mode), a.year});
    }
    return terms;
}

}  // namespace

double sd_index(const PublicationList& list, const SimilarityMatrix& matrix,
                const Corpus& corpus) {
    if (list.items.empty()) throw DomainError("sd_index: publication list is empty");
    const std::vector<ListTerm> terms = make_terms(list, matrix, corpus);

    double total = 0.0;
    for (const ListTerm& ti : terms) {
        for (const ListTerm& tj : terms) {
            if (!ti.journal || !tj.journal) continue;  // unknown journal pairs score 0
            total += matrix.lookup_index(*ti.journal, *tj.journal) * ti.weight;
        }
    }
    const double n = static_cast<double>(terms.size());
    return total / (n * n);
}

std::map<int, double> sd_by_year(const PublicationList& list, const Corpus& corpus,
                                 const SimConfig& cfg, YearWindow window, unsigned threads) {
    if (list.items.empty()) throw DomainError("sd_by_year: publication list is empty");

    std::set<int> years;
    for (const ArticleId& id : list.items) years.insert(corpus.article(id).year);

    std::map<int, double> out;
    for (const int y : years) {
        PublicationList sub{list.label, {}};
        for (const ArticleId& id : list.items) {
            const int ay = corpus.article(id).year;
            if (window == YearWindow::cumulative ? ay <= y : ay == y) sub.items.push_back(id);
        }
        const YearRange range{window == YearWindow::cumulative ? corpus.min_year() : y, y};
        const Corpus restricted = filter_by_period(corpus, range);
        const SimilarityMatrix matrix = build_analysis_matrix(restricted, cfg, threads);
        out[y] = sd_index(sub, matrix, restricted);
    }
    return out;
}

std::vector<std::pair<AuthorId, double>> coauthor_sd_ranking(const AuthorId& author,
                                                             const SimilarityMatrix& matrix,
                                                             const Corpus& corpus) {
    if (!corpus.has_author(author)) throw LookupError("unknown author id: " + author);

    std::set<AuthorId> people{author};
    for (const std::uint32_t pos : corpus.articles_of_author(author))
        for (const AuthorId& k : corpus.articles()[pos].authors) people.insert(k);

    std::vector<std::pair<AuthorId, double>> out;
    out.reserve(people.size());
    for (const AuthorId& k : people) {
        PublicationList list{k, {}};
        for (const std::uint32_t pos : corpus.articles_of_author(k))
            list.items.push_back(corpus.articles()[pos].id);
        out.emplace_back(k, sd_index(list, matrix, corpus));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    return out;
}

PublicationList load_publication_list(std::istream& in, std::string label,
                                      std::vector<long>* lines) {
    PublicationList list{std::move(label), {}};
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        list.items.push_back(line);
        if (lines) lines->push_back(lineno);
    }
    return list;
}

void write_report_json(const DiversityReport& report, std::ostream& out) {
    nlohmann::json j{
        {"label", report.label},
        {"sd", report.sd},
        {"n_articles", report.n_articles},
    };
    if (report.per_year) {
        nlohmann::json py = nlohmann::json::object();
        for (const auto& [year, sd] : *report.per_year) py[std::to_string(year)] = sd;
        j["per_year"] = py;
    }
    out << j.dump(2) << '\n';
}

void write_report_csv(const DiversityReport& report, std::ostream& out) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", report.sd);
    out << "label,sd,n_articles\n"
        << report.label << ',' << buf << ',' << report.n_articles << '\n';
}

}  // namespace scidiv
