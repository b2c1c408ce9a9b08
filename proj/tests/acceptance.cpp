// Acceptance suite. Each numbered check prints one PASS/FAIL line; the
// process exits with the number of failed checks.
// Usage: acceptance <path-to-scidiv-binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/resource.h>

#include "scidiv/centrality.hpp"
#include "scidiv/diversity.hpp"
#include "scidiv/similarity.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/subprocess.hpp"

namespace fs = std::filesystem;
using namespace scidiv;

namespace {

int failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %d  %-34s %s\n", ok ? "PASS" : "FAIL", number, name,
                detail.empty() ? "" : ("[" + detail + "]").c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t peak_rss_kb() {
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0 && usage.ru_maxrss > 0)
        return static_cast<std::size_t>(usage.ru_maxrss);  // kilobytes on Linux
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
    return 0;
}

double rel_err(double got, double want) {
    if (got == want) return 0.0;
    return std::abs(got - want) / std::max({1e-300, std::abs(got), std::abs(want)});
}

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

std::string serialize(const SimilarityMatrix& m) {
    std::ostringstream out;
    write_matrix_csv(m, out);
    return out.str();
}

constexpr Combiner kCombiners[] = {Combiner::min, Combiner::arithmetic, Combiner::geometric};
constexpr PageMode kModes[] = {PageMode::raw, PageMode::journal_normalized};

// ---------------------------------------------------------------------------

void criterion_1_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(101);
    double max_rel = 0.0;
    bool ok = true;
    std::size_t checked = 0;

    for (int round = 0; round < 200 && ok; ++round) {
        const auto articles = gen::random_articles(rng);
        const Corpus corpus = Corpus::from_articles(articles);
        for (const Combiner comb : kCombiners) {
            for (const PageMode mode : kModes) {
                const auto matrix = build_similarity(corpus, {comb, mode});
                const auto table = oracle::naive_similarity(articles, comb, mode);
                std::size_t canonical = 0;
                for (const auto& [key, value] : table.ordered) {
                    if (key.first > key.second) continue;
                    ++canonical;
                    const double err = rel_err(matrix.lookup(key.first, key.second), value);
                    max_rel = std::max(max_rel, err);
                    if (err > 1e-12) ok = false;
                    ++checked;
                }
                if (matrix.entry_count() != canonical) ok = false;
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed > 60.0) ok = false;
    report(1, "similarity-oracle-equivalence", ok,
           fmt("200 corpora x 6 configs, %zu entries, max rel %.2e, %.1fs", checked, max_rel,
               elapsed));
}

void criterion_2_golden_values() {
    bool ok = true;
    const auto expect = [&](bool cond) { ok = ok && cond; };

    // two-article corpus, min/raw
    const auto c2 = fixtures::c2();
    const auto t2 = oracle::naive_similarity(fixtures::c2_articles(), Combiner::min,
                                             PageMode::raw);
    expect(t2.at("A", "B") == 4.0 && t2.at("A", "A") == 4.0 && t2.at("B", "B") == 6.0);
    const auto m2 = build_similarity(c2, {Combiner::min, PageMode::raw});
    expect(m2.lookup("A", "B") == 4.0 && m2.lookup("A", "A") == 4.0 &&
           m2.lookup("B", "B") == 6.0);

    const auto lookup2 = [&](const std::string& x, const std::string& y) {
        return t2.unordered(x, y);
    };
    expect(oracle::naive_sd(fixtures::c2_articles(), {"a1", "a2"}, lookup2, PageMode::raw) ==
           23.0);
    expect(sd_index({"L", {"a1", "a2"}}, m2, c2) == 23.0);
    expect(central_journal({"L", {"a1", "a2"}}, m2, c2) == std::vector<JournalId>{"B"});

    // three-article corpus
    const auto c3 = fixtures::c3();
    const auto t3 = oracle::naive_similarity(fixtures::c3_articles(), Combiner::min,
                                             PageMode::raw);
    expect(t3.at("A", "A") == 4.0 && t3.at("A", "B") == 4.0 && t3.at("B", "B") == 14.0);
    const auto m3 = build_similarity(c3, {Combiner::min, PageMode::raw});
    expect(m3.lookup("A", "A") == 4.0 && m3.lookup("A", "B") == 4.0 &&
           m3.lookup("B", "B") == 14.0);
    expect(sd_index({"L", {"a1", "a2", "a3"}}, m3, c3) == 344.0 / 9.0);
    expect(central_journal({"L", {"a1", "a2", "a3"}}, m3, c3) == std::vector<JournalId>{"B"});

    const auto sq = second_order(m3);
    const auto sq_naive = oracle::naive_square(m3);
    expect(sq.lookup("A", "A") == 32.0 && sq.lookup("A", "B") == 72.0 &&
           sq.lookup("B", "B") == 212.0);
    expect(sq_naive.at({"A", "A"}) == 32.0 && sq_naive.at({"A", "B"}) == 72.0 &&
           sq_naive.at({"B", "B"}) == 212.0);

    const auto blended = blend(m3, sq, 0.5);
    expect(blended.lookup("A", "A") == 20.0 && blended.lookup("A", "B") == 40.0 &&
           blended.lookup("B", "B") == 120.0);

    report(2, "golden-worked-examples", ok, "matrices, sd, central, square, blend");
}

void criterion_3_symmetry_and_diagonal() {
    std::mt19937 rng(303);
    bool ok = true;
    std::size_t corpora = 0;
    for (int round = 0; round < 200 && ok; ++round) {
        const auto articles = gen::random_articles(rng);
        const Corpus corpus = Corpus::from_articles(articles);
        ++corpora;
        for (const Combiner comb : kCombiners) {
            const auto raw = build_similarity(corpus, {comb, PageMode::raw});
            const auto norm = build_similarity(corpus, {comb, PageMode::journal_normalized});
            const auto journals = corpus.journals();
            for (const auto& a : journals)
                for (const auto& b : journals)
                    if (raw.lookup(a, b) != raw.lookup(b, a)) ok = false;
            for (const auto& j : journals) {
                if (raw.lookup(j, j) <
                    static_cast<double>(corpus.page_total(j)) * (1.0 - 1e-9))
                    ok = false;
                if (norm.lookup(j, j) < 1.0 - 1e-12) ok = false;
            }
        }
    }
    report(3, "symmetry-and-diagonal-bounds", ok,
           fmt("%zu corpora, 3 combiners, exact symmetry", corpora));
}

void criterion_4_sd_duplication() {
    std::mt19937 rng(404);
    bool ok = true;
    double max_rel = 0.0;
    for (int round = 0; round < 120; ++round) {
        const auto articles = gen::random_articles(rng);
        const Corpus corpus = Corpus::from_articles(articles);
        const PageMode mode = round % 2 ? PageMode::raw : PageMode::journal_normalized;
        const auto matrix = build_similarity(corpus, {Combiner::min, mode});
        PublicationList list{"L", gen::random_list(rng, articles)};
        PublicationList doubled{"LL", list.items};
        doubled.items.insert(doubled.items.end(), list.items.begin(), list.items.end());
        const double sd = sd_index(list, matrix, corpus);
        const double sd2 = sd_index(doubled, matrix, corpus);
        const double err = std::abs(sd2 - sd) / std::max(1e-300, std::abs(sd));
        max_rel = std::max(max_rel, err);
        if (err > 1e-12) ok = false;
    }
    report(4, "sd-duplication-invariance", ok, fmt("120 lists, max rel %.2e", max_rel));
}

void criterion_5_scaling() {
    std::mt19937 rng(505);
    bool ok = true;

    // normalized mode: per-journal scaling leaves the serialized matrix
    // byte-identical
    for (int round = 0; round < 20 && ok; ++round) {
        auto articles = gen::random_articles(rng);
        const auto base = build_similarity(Corpus::from_articles(articles),
                                           {Combiner::min, PageMode::journal_normalized});
        std::map<std::string, long long> factor;
        std::uniform_int_distribution<long long> f(1, 9);
        for (auto& a : articles) {
            if (!factor.count(a.journal)) factor[a.journal] = f(rng);
            a.pages *= factor[a.journal];
        }
        const auto scaled = build_similarity(Corpus::from_articles(articles),
                                             {Combiner::min, PageMode::journal_normalized});
        if (serialize(base) != serialize(scaled)) ok = false;
    }

    // raw mode: global scaling multiplies entries by the factor, decisions
    // unchanged
    double max_rel = 0.0;
    for (int round = 0; round < 20 && ok; ++round) {
        auto articles = gen::random_articles(rng);
        const Corpus base_corpus = Corpus::from_articles(articles);
        const PublicationList list{"L", gen::random_list(rng, articles)};
        auto scaled_articles = articles;
        for (auto& a : scaled_articles) a.pages *= 3;
        const Corpus scaled_corpus = Corpus::from_articles(scaled_articles);

        for (const Combiner comb : kCombiners) {
            const auto base = build_similarity(base_corpus, {comb, PageMode::raw});
            const auto scaled = build_similarity(scaled_corpus, {comb, PageMode::raw});
            if (base.entry_count() != scaled.entry_count()) ok = false;
            for (const auto& e : base.sorted_entries()) {
                const double err = rel_err(scaled.lookup_index(e.a, e.b), 3.0 * e.value);
                max_rel = std::max(max_rel, err);
                if (err > 1e-12) ok = false;
            }
            if (central_journal(list, base, base_corpus) !=
                central_journal(list, scaled, scaled_corpus))
                ok = false;
            const auto r1 = rank_journals(list, base, base_corpus);
            const auto r2 = rank_journals(list, scaled, scaled_corpus);
            if (r1.size() != r2.size()) ok = false;
            for (std::size_t i = 0; ok && i < r1.size(); ++i)
                if (r1[i].journal != r2[i].journal) ok = false;
        }
    }
    report(5, "scale-covariance-and-invariance", ok,
           fmt("20+20 corpora, max rel %.2e", max_rel));
}

void criterion_6_second_order() {
    std::mt19937 rng(606);
    bool ok = true;
    for (int round = 0; round < 100 && ok; ++round) {
        // random sparse symmetric matrix up to 20x20
        const int n = std::uniform_int_distribution<int>(1, 20)(rng);
        std::vector<JournalId> journals;
        char buf[16];
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "J%02d", i);
            journals.emplace_back(buf);
        }
        std::uniform_real_distribution<double> value(0.05, 25.0);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::unordered_map<std::uint64_t, double> cells;
        for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(n); ++a)
            for (std::uint32_t b = a; b < static_cast<std::uint32_t>(n); ++b)
                if (coin(rng) < 0.4) cells[SimilarityMatrix::pack(a, b)] = value(rng);
        const SimilarityMatrix m(journals, SimConfig{}, std::move(cells));

        const auto got = second_order(m);
        const auto want = oracle::naive_square(m);
        std::size_t stored = 0;
        for (const auto& [key, v] : want) {
            ++stored;
            if (got.lookup(key.first, key.second) != v) ok = false;  // bitwise equality
        }
        if (got.entry_count() != stored) ok = false;

        // theta 0 blend is the identity
        const auto same = blend(m, got, 0.0);
        if (serialize(same) != serialize(m)) ok = false;
    }
    report(6, "second-order-exactness", ok, "100 matrices <= 20x20, bitwise");
}

void criterion_7_centrality_oracle() {
    std::mt19937 rng(707);
    bool ok = true;
    double max_rel = 0.0;
    for (int round = 0; round < 120; ++round) {
        const auto articles = gen::random_articles(rng);
        const Corpus corpus = Corpus::from_articles(articles);
        const PageMode mode = round % 2 ? PageMode::raw : PageMode::journal_normalized;
        const auto matrix = build_similarity(corpus, {Combiner::min, mode});
        const PublicationList list{"L", gen::random_list(rng, articles)};

        const auto naive = oracle::naive_journal_scores(
            articles, list.items,
            [&](const std::string& x, const std::string& y) { return matrix.lookup(x, y); },
            mode);
        const auto ranking = rank_journals(list, matrix, corpus);
        if (ranking.size() != naive.size()) ok = false;
        for (const auto& js : ranking) {
            const double err = rel_err(js.score, naive.at(js.journal));
            max_rel = std::max(max_rel, err);
            if (err > 1e-12) ok = false;
        }
        for (std::size_t i = 1; i < ranking.size(); ++i) {
            if (ranking[i - 1].score < ranking[i].score) ok = false;
            if (ranking[i - 1].score == ranking[i].score &&
                !(ranking[i - 1].journal < ranking[i].journal))
                ok = false;
        }

        // exact tie reproduction: the argmax sets must coincide
        double best = 0.0;
        for (const auto& [journal, score] : naive) best = std::max(best, score);
        std::vector<JournalId> naive_central;
        for (const auto& [journal, score] : naive)
            if (score == best) naive_central.push_back(journal);
        if (central_journal(list, matrix, corpus) != naive_central) ok = false;
    }
    report(7, "centrality-oracle-equivalence", ok, fmt("120 lists, max rel %.2e", max_rel));
}

void criterion_8_cli_determinism(const std::string& bin) {
    bool ok = true;
    const fs::path dir = fs::current_path() / "acceptance_tmp";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto at = [&](const std::string& name) { return (dir / name).string(); };
    const auto q = [](const std::string& s) { return "'" + s + "'"; };

    const auto articles = gen::synthetic_corpus(10000, 500, 3000, 42);
    proc::write_file(at("corpus.csv"), gen::to_csv(articles));
    std::string list_text;
    for (std::size_t i = 0; i < articles.size(); i += 20) list_text += articles[i].id + "\n";
    proc::write_file(at("list.txt"), list_text);

    const std::string common = " --corpus " + q(at("corpus.csv")) + " --theta 0.5 ";
    ok &= proc::run(q(bin) + " build-sim" + common + "--threads 1 --output " + q(at("s1.csv"))) == 0;
    ok &= proc::run(q(bin) + " build-sim" + common + "--threads 1 --output " + q(at("s1b.csv"))) == 0;
    ok &= proc::run(q(bin) + " build-sim" + common + "--threads 4 --output " + q(at("s4.csv"))) == 0;
    ok &= proc::run(q(bin) + " build-sim" + common + "--threads 4 --output " + q(at("s4b.csv"))) == 0;

    const std::string s1 = proc::read_file(at("s1.csv"));
    ok &= !s1.empty();
    ok &= s1 == proc::read_file(at("s1b.csv"));
    ok &= s1 == proc::read_file(at("s4.csv"));
    ok &= s1 == proc::read_file(at("s4b.csv"));

    // rerunning the identical command line: manifests differ in the
    // timestamp only
    const std::string first_manifest = proc::read_file(at("s1.csv.manifest.json"));
    ok &= proc::run(q(bin) + " build-sim" + common + "--threads 1 --output " + q(at("s1.csv"))) == 0;
    ok &= s1 == proc::read_file(at("s1.csv"));
    ok &= proc::drop_timestamp_line(first_manifest) ==
          proc::drop_timestamp_line(proc::read_file(at("s1.csv.manifest.json")));

    for (const char* command : {"diversity", "central", "rank"}) {
        for (const char* tag : {"x", "y"}) {
            const std::string out = at(std::string(command) + "." + tag);
            if (proc::run(q(bin) + " " + command + " --corpus " + q(at("corpus.csv")) +
                          " --matrix " + q(at("s1.csv")) + " --list " + q(at("list.txt")) +
                          " --output " + q(out)) != 0)
                ok = false;
        }
        const std::string x = proc::read_file(at(std::string(command) + ".x"));
        ok &= !x.empty() && x == proc::read_file(at(std::string(command) + ".y"));
    }
    report(8, "cli-byte-determinism", ok,
           fmt("10k-article corpus, threads 1 vs 4, %zu matrix bytes", s1.size()));
}

void criterion_9_throughput() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto articles = gen::synthetic_corpus(100000, 2000, 30000, 7);
    const Corpus corpus = Corpus::from_articles(articles);
    const double gen_seconds = seconds_since(t0);

    const unsigned threads = std::max(2u, std::thread::hardware_concurrency());
    const auto t1 = std::chrono::steady_clock::now();
    const SimConfig cfg{Combiner::min, PageMode::journal_normalized, 0.5};
    const SimilarityMatrix blended = build_analysis_matrix(corpus, cfg, threads);
    const double build_seconds = seconds_since(t1);

    const double peak_gb = static_cast<double>(peak_rss_kb()) / (1024.0 * 1024.0);
    const bool ok = build_seconds <= 60.0 && peak_gb <= 2.0 && !blended.empty();
    report(9, "desk-scale-throughput", ok,
           fmt("100k articles, %zu journals, %zu entries, gen %.1fs, build %.1fs, peak %.2f GB",
               blended.journals().size(), blended.entry_count(), gen_seconds, build_seconds,
               peak_gb));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <scidiv-binary>\n");
        return 2;
    }
    const std::string bin = fs::absolute(argv[1]).string();

    criterion_1_oracle_equivalence();
    criterion_2_golden_values();
    criterion_3_symmetry_and_diagonal();
    criterion_4_sd_duplication();
    criterion_5_scaling();
    criterion_6_second_order();
    criterion_7_centrality_oracle();
    criterion_8_cli_determinism(bin);
    criterion_9_throughput();

    std::printf("%d criterion failure(s)\n", failures);
    return failures;
}
