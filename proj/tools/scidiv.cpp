// scidiv: batch analytics over bibliographic corpora. Builds a co-authorship
// journal-similarity matrix and evaluates diversity, centrality, ranking,
// suggestion and classification reports against it. Every run writes a
// manifest next to its output; identical inputs and flags produce
// byte-identical result files.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "scidiv/centrality.hpp"
#include "scidiv/corpus.hpp"
#include "scidiv/diversity.hpp"
#include "scidiv/similarity.hpp"
#include "scidiv/validation.hpp"

namespace {

using nlohmann::json;

scidiv::Corpus open_corpus(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scidiv::Error("cannot open corpus file: " + path);
    return scidiv::load_corpus(in, format == "jsonl" ? scidiv::CorpusFormat::jsonl
                                                     : scidiv::CorpusFormat::csv);
}

scidiv::YearRange parse_years(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw scidiv::DomainError("years must be A:B");
    scidiv::YearRange r{};
    try {
        r.first = std::stoi(text.substr(0, colon));
        r.last = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw scidiv::DomainError("years must be A:B with integer bounds");
    }
    if (r.first > r.last) throw scidiv::DomainError("years range is empty: " + text);
    return r;
}

std::string check_years(const std::string& text) {
    try {
        parse_years(text);
    } catch (const scidiv::Error& e) {
        return e.what();
    }
    return {};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scidiv::Error("cannot write output file: " + path);
    out << content;
    if (!out) throw scidiv::Error("write failed: " + path);
}

std::string utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Results are assembled in memory first; nothing is written until every
// input has been read and validated.
void emit(const std::string& output, const std::string& content, json manifest) {
    manifest["timestamp"] = utc_now();
    write_file(output, content);
    write_file(output + ".manifest.json", manifest.dump(2) + "\n");
}

struct MatrixBundle {
    scidiv::SimilarityMatrix matrix;
    std::optional<scidiv::MatrixMetadata> meta;
};

MatrixBundle open_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scidiv::Error("cannot open matrix file: " + path);
    MatrixBundle bundle;
    std::ifstream metain(path + ".meta.json", std::ios::binary);
    if (metain) bundle.meta = scidiv::read_matrix_metadata(metain);
    bundle.matrix = scidiv::read_matrix_csv(
        in, bundle.meta ? bundle.meta->config : scidiv::SimConfig{});
    return bundle;
}

// Analysis corpus: --years wins, otherwise the window recorded in the matrix
// metadata, so weights are computed over the same corpus the matrix saw.
scidiv::Corpus open_analysis_corpus(const std::string& path, const std::string& format,
                                    const std::string& years_flag,
                                    const std::optional<scidiv::MatrixMetadata>& meta) {
    scidiv::Corpus corpus = open_corpus(path, format);
    std::optional<scidiv::YearRange> years;
    if (!years_flag.empty())
        years = parse_years(years_flag);
    else if (meta && meta->years)
        years = meta->years;
    if (years) corpus = scidiv::filter_by_period(corpus, *years);
    if (meta && !meta->corpus_fingerprint.empty() &&
        meta->corpus_fingerprint != corpus.fingerprint())
        std::cerr << "warning: corpus content differs from what the matrix was built on\n";
    return corpus;
}

scidiv::PublicationList open_list(const std::string& path, const std::string& label,
                                  const scidiv::Corpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scidiv::Error("cannot open list file: " + path);
    std::vector<long> lines;
    scidiv::PublicationList list = scidiv::load_publication_list(in, label, &lines);
    if (list.items.empty()) throw scidiv::DomainError("publication list is empty: " + path);

    std::string bad;
    std::size_t nbad = 0;
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        if (!corpus.has_article(list.items[i])) {
            bad += "\n  line " + std::to_string(lines[i]) + ": unknown article id '" +
                   list.items[i] + "'";
            ++nbad;
        }
    }
    if (nbad)
        throw scidiv::LookupError(path + ": " + std::to_string(nbad) +
                                  " unknown article id(s)" + bad);
    return list;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-authorship journal similarity and publication-list diversity toolkit"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand registers the flags it uses.
    std::string corpus_path, format = "csv", years, output, matrix_path, list_path, label;
    std::string classification_path, author, combiner = "min", page_mode = "normalized";
    std::string window = "cumulative";
    double theta = 0.0;
    unsigned threads = 1;
    std::size_t top_n = 10;
    bool per_year = false, as_csv = false, as_json = false;
    bool restrict_coauthors = false, exclude_diagonal = false;

    const auto add_corpus_opts = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
        cmd->add_option("--format", format, "Corpus format")
            ->check(CLI::IsMember({"csv", "jsonl"}))
            ->capture_default_str();
        cmd->add_option("--years", years, "Inclusive year window A:B")->check(check_years);
    };
    const auto add_output_opt = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "Result file path")->required();
    };
    const auto add_matrix_opt = [&](CLI::App* cmd) {
        cmd->add_option("--matrix", matrix_path,
                        "Similarity matrix CSV (its .meta.json sidecar is picked up "
                        "automatically)")
            ->required();
    };
    const auto add_list_opt = [&](CLI::App* cmd) {
        cmd->add_option("--list", list_path, "Publication list file, one article id per line")
            ->required();
        cmd->add_option("--label", label, "Label for the report (default: list file stem)");
    };

    CLI::App* build = app.add_subcommand("build-sim", "Build the journal similarity matrix");
    add_corpus_opts(build);
    add_output_opt(build);
    build->add_option("--combiner", combiner, "Weight combiner")
        ->check(CLI::IsMember({"min", "arith", "geom"}))
        ->capture_default_str();
    build->add_option("--page-mode", page_mode, "Page interpretation")
        ->check(CLI::IsMember({"raw", "normalized"}))
        ->capture_default_str();
    build->add_option("--theta", theta, "Second-order blend weight")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    build->add_option("--threads", threads, "Worker threads for the build")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* diversity = app.add_subcommand("diversity", "Scientific-diversity index of a list");
    add_corpus_opts(diversity);
    add_matrix_opt(diversity);
    add_list_opt(diversity);
    add_output_opt(diversity);
    diversity->add_flag("--per-year", per_year, "Add the temporal evolution of the index");
    diversity->add_option("--window", window, "Per-year window")
        ->check(CLI::IsMember({"cumulative", "slice"}))
        ->capture_default_str();
    diversity->add_option("--threads", threads, "Worker threads for per-year rebuilds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    diversity->add_flag("--csv", as_csv, "Write CSV instead of JSON");

    CLI::App* central = app.add_subcommand("central", "Central journal(s) of a list");
    add_corpus_opts(central);
    add_matrix_opt(central);
    add_list_opt(central);
    add_output_opt(central);

    CLI::App* rank = app.add_subcommand("rank", "Rank the journals of a list");
    add_corpus_opts(rank);
    add_matrix_opt(rank);
    add_list_opt(rank);
    add_output_opt(rank);
    rank->add_flag("--json", as_json, "Write JSON instead of CSV");

    CLI::App* suggest = app.add_subcommand("suggest", "Suggest unvisited journals for an author");
    add_corpus_opts(suggest);
    add_matrix_opt(suggest);
    add_output_opt(suggest);
    suggest->add_option("--author", author, "Author id")->required();
    suggest->add_option("--top", top_n, "Maximum number of suggestions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    suggest->add_flag("--restrict-coauthors", restrict_coauthors,
                      "Only journals the author's co-authors have published in");
    suggest->add_flag("--json", as_json, "Write JSON instead of CSV");

    CLI::App* validate = app.add_subcommand(
        "validate", "Within-domain vs. global similarity averages and generalist scores");
    add_matrix_opt(validate);
    add_output_opt(validate);
    validate->add_option("--classification", classification_path,
                         "journal_id,domain CSV")->required();
    validate->add_flag("--exclude-diagonal", exclude_diagonal,
                       "Drop same-journal pairs from the averages");
    validate->add_flag("--csv", as_csv, "Write the per-domain table as CSV instead of JSON");

    CLI::App* domain_matrix =
        app.add_subcommand("domain-matrix", "Average similarity between domains");
    add_matrix_opt(domain_matrix);
    add_output_opt(domain_matrix);
    domain_matrix->add_option("--classification", classification_path,
                              "journal_id,domain CSV")->required();

    try {
        app.parse(argc, argv);

        if (build->parsed()) {
            scidiv::Corpus corpus = open_corpus(corpus_path, format);
            std::optional<scidiv::YearRange> range;
            if (!years.empty()) {
                range = parse_years(years);
                corpus = scidiv::filter_by_period(corpus, *range);
            }
            scidiv::SimConfig cfg{scidiv::combiner_from_string(combiner),
                                  scidiv::page_mode_from_string(page_mode), theta};
            const scidiv::SimilarityMatrix matrix =
                scidiv::build_analysis_matrix(corpus, cfg, threads);

            std::ostringstream body, meta;
            scidiv::write_matrix_csv(matrix, body);
            scidiv::write_matrix_metadata({cfg, range, corpus.fingerprint()}, meta);

            json manifest{{"command", "build-sim"},    {"corpus", corpus_path},
                          {"format", format},          {"years", years.empty() ? json() : json(years)},
                          {"combiner", combiner},      {"page_mode", page_mode},
                          {"theta", theta},            {"threads", threads},
                          {"output", output}};
            write_file(output + ".meta.json", meta.str());
            emit(output, body.str(), manifest);
        } else if (diversity->parsed()) {
            MatrixBundle bundle = open_matrix(matrix_path);
            const scidiv::Corpus corpus =
                open_analysis_corpus(corpus_path, format, years, bundle.meta);
            const scidiv::PublicationList list =
                open_list(list_path, label.empty() ? stem_of(list_path) : label, corpus);

            scidiv::DiversityReport report;
            report.label = list.label;
            report.n_articles = list.items.size();
            report.sd = scidiv::sd_index(list, bundle.matrix, corpus);
            if (per_year)
                report.per_year = scidiv::sd_by_year(
                    list, corpus, bundle.matrix.config(),
                    window == "slice" ? scidiv::YearWindow::per_year
                                      : scidiv::YearWindow::cumulative,
                    threads);

            std::ostringstream body;
            as_csv ? scidiv::write_report_csv(report, body)
                   : scidiv::write_report_json(report, body);
            json manifest{{"command", "diversity"}, {"corpus", corpus_path},
                          {"format", format},       {"years", years.empty() ? json() : json(years)},
                          {"matrix", matrix_path},  {"list", list_path},
                          {"label", report.label},  {"per_year", per_year},
                          {"window", window},       {"output", output}};
            emit(output, body.str(), manifest);
        } else if (central->parsed() || rank->parsed()) {
            MatrixBundle bundle = open_matrix(matrix_path);
            const scidiv::Corpus corpus =
                open_analysis_corpus(corpus_path, format, years, bundle.meta);
            const scidiv::PublicationList list =
                open_list(list_path, label.empty() ? stem_of(list_path) : label, corpus);

            std::ostringstream body;
            const char* command;
            if (central->parsed()) {
                command = "central";
                const auto journals = scidiv::central_journal(list, bundle.matrix, corpus);
                body << json{{"central", journals}}.dump(2) << '\n';
            } else {
                command = "rank";
                const auto scores = scidiv::rank_journals(list, bundle.matrix, corpus);
                as_json ? scidiv::write_scores_json(scores, body)
                        : scidiv::write_scores_csv(scores, body);
            }
            json manifest{{"command", command},     {"corpus", corpus_path},
                          {"format", format},       {"years", years.empty() ? json() : json(years)},
                          {"matrix", matrix_path},  {"list", list_path},
                          {"output", output}};
            emit(output, body.str(), manifest);
        } else if (suggest->parsed()) {
            MatrixBundle bundle = open_matrix(matrix_path);
            const scidiv::Corpus corpus =
                open_analysis_corpus(corpus_path, format, years, bundle.meta);
            const auto scores = scidiv::suggest_journals(author, bundle.matrix, corpus,
                                                         restrict_coauthors, top_n);
            std::ostringstream body;
            as_json ? scidiv::write_scores_json(scores, body)
                    : scidiv::write_scores_csv(scores, body);
            json manifest{{"command", "suggest"},  {"corpus", corpus_path},
                          {"format", format},      {"years", years.empty() ? json() : json(years)},
                          {"matrix", matrix_path}, {"author", author},
                          {"top", top_n},          {"restrict_coauthors", restrict_coauthors},
                          {"output", output}};
            emit(output, body.str(), manifest);
        } else if (validate->parsed() || domain_matrix->parsed()) {
            MatrixBundle bundle = open_matrix(matrix_path);
            std::ifstream cin_(classification_path, std::ios::binary);
            if (!cin_)
                throw scidiv::Error("cannot open classification file: " + classification_path);
            const scidiv::Classification cls = scidiv::load_classification(cin_);

            std::ostringstream body;
            const char* command;
            if (validate->parsed()) {
                command = "validate";
                const auto report =
                    scidiv::within_domain_report(bundle.matrix, cls, !exclude_diagonal);
                if (as_csv)
                    scidiv::write_domain_report_csv(report, body);
                else
                    scidiv::write_domain_report_json(
                        report, scidiv::generalist_scores(bundle.matrix), body);
            } else {
                command = "domain-matrix";
                scidiv::write_domain_matrix_csv(
                    scidiv::domain_similarity_matrix(bundle.matrix, cls), body);
            }
            json manifest{{"command", command},
                          {"matrix", matrix_path},
                          {"classification", classification_path},
                          {"exclude_diagonal", exclude_diagonal},
                          {"output", output}};
            emit(output, body.str(), manifest);
        }
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const scidiv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
