#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmsa/error.hpp"
#include "dmsa/fasta.hpp"
#include "dmsa/ledger.hpp"
#include "dmsa/quality.hpp"
#include "dmsa/runtime.hpp"
#include "dmsa/synth.hpp"

namespace dmsa::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct PipelineFlags {
    std::size_t workers = 1;
    std::size_t k = 5;
    double delta = 0.02;
    std::size_t sample_k = 0;
    std::string matrix;
    double gap_open = -3.0;
    double gap_extend = -0.5;
    std::uint64_t seed = 0;
    std::string aligner = "builtin";
    std::string alphabet = "protein";
    bool wildcard = false;
    bool sequential = false;
};

void add_alphabet_flags(CLI::App& app, std::string& alphabet, bool& wildcard) {
    app.add_option("--alphabet", alphabet, "Residue alphabet")->check(CLI::IsMember({"protein", "dna"}));
    app.add_flag("--wildcard", wildcard, "Map unknown letters to X (protein) or N (dna)");
}

void add_scoring_flags(CLI::App& app, std::string& matrix, double& open, double& extend) {
    app.add_option("--matrix", matrix, "pam200, vtml240, unit, or a matrix file (default: pam200 for protein, unit for dna)");
    app.add_option("--gap-open", open, "Gap open score");
    app.add_option("--gap-extend", extend, "Gap extension score per position");
}

void add_pipeline_flags(CLI::App& app, PipelineFlags& f, bool with_workers) {
    if (with_workers) app.add_option("--workers", f.workers, "Number of logical workers")->check(CLI::PositiveNumber);
    app.add_option("--kmer", f.k, "k-mer length")->check(CLI::Range(1, 8));
    app.add_option("--delta", f.delta, "Offset inside the k-mer distance logarithm");
    app.add_option("--sample-k", f.sample_k, "Global-sample size per worker (default: workers - 1)");
    add_scoring_flags(app, f.matrix, f.gap_open, f.gap_extend);
    app.add_option("--seed", f.seed, "Run seed (recorded)");
    app.add_option("--aligner", f.aligner, "builtin or cmd:<template> with {in} and {out} placeholders");
    add_alphabet_flags(app, f.alphabet, f.wildcard);
    app.add_flag("--sequential", f.sequential, "Step workers in order on one thread");
}

Alphabet alphabet_of(const std::string& name, bool wildcard) {
    return name == "dna" ? Alphabet::nucleotide(wildcard) : Alphabet::protein(wildcard);
}

std::string matrix_of(const std::string& requested, const std::string& alphabet) {
    if (requested.empty()) return alphabet == "dna" ? "unit" : "pam200";
    if (requested == "pam200" || requested == "vtml240" || requested == "unit") return requested;
    std::error_code ec;
    if (std::filesystem::is_regular_file(requested, ec)) return requested;
    throw UsageError("--matrix: '" + requested + "' is neither a bundled matrix nor a readable file");
}

RunConfig config_of(const PipelineFlags& f) {
    RunConfig c;
    c.workers = f.workers;
    c.kmer.k = f.k;
    c.kmer.delta = f.delta;
    c.sample_k = f.sample_k;
    c.gaps.open = f.gap_open;
    c.gaps.extend = f.gap_extend;
    c.alphabet = alphabet_of(f.alphabet, f.wildcard);
    c.matrix = matrix_of(f.matrix, f.alphabet);
    c.seed = f.seed;
    c.parallel = !f.sequential;
    if (f.aligner.rfind("cmd:", 0) == 0) {
        if (f.aligner.size() == 4) throw UsageError("--aligner: empty command after 'cmd:'");
        c.external_command = f.aligner.substr(4);
    } else if (f.aligner != "builtin") {
        throw UsageError("--aligner: expected 'builtin' or 'cmd:<template>', got '" + f.aligner + "'");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

void require(const CLI::App& app, const char* name) {
    if (app.get_option(name)->count() == 0) throw UsageError(std::string(name) + " is required");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_file(path, text);
}

// key=value lines; keys are long option names. Only fills options that were
// not given on the command line.
void apply_config(CLI::App& app, const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config")
            throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value);
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::vector<Sequence> read_sequences(const std::string& path, const Alphabet& alphabet) {
    return parse_fasta(read_file(path), alphabet);
}

Alignment read_alignment(const std::string& path, const Alphabet& alphabet) {
    return Alignment(parse_aligned_fasta(read_file(path), alphabet));
}

struct AlignCmd {
    PipelineFlags flags;
    std::string in, out, ledger, messages;

    int run(const CLI::App& app, bool verbose, std::ostream& out_stream, std::ostream& err) {
        require(app, "--in");
        const auto config = config_of(flags);
        const auto seqs = read_sequences(in, config.alphabet);
        const auto result = run_pipeline(seqs, config);
        emit(out, write_fasta(result.alignment), out_stream);
        if (!ledger.empty()) write_file(ledger, ledger_report(result.ledger));
        if (!messages.empty()) write_file(messages, message_log_csv(result.ledger));
        if (verbose) {
            const auto work = result.ledger.total_work();
            err << "aligned " << seqs.size() << " sequences on " << config.workers << " worker(s): "
                << result.alignment.n_cols() << " columns, " << work.dp_cells << " dp cells, " << work.kmer_evals
                << " k-mer evaluations, " << result.ledger.total_bytes() << " bytes sent (seed " << config.seed
                << ")\n";
        }
        return 0;
    }
};

struct ScoreCmd {
    std::string test, ref, matrix, alphabet = "protein";
    bool wildcard = false;
    bool no_terminal = false;
    double open = -3.0;
    double extend = -0.5;

    int run(const CLI::App& app, std::ostream& out) {
        require(app, "--test");
        require(app, "--ref");
        const auto alpha = alphabet_of(alphabet, wildcard);
        const GapModel gaps{open, extend};
        try {
            gaps.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        RunConfig rc;
        rc.alphabet = alpha;
        rc.matrix = matrix_of(matrix, alphabet);
        const auto model = make_model(rc);
        const auto t = read_alignment(test, alpha);
        const auto r = read_alignment(ref, alpha);
        out << "q,tc,modeler,sp\n"
            << fixed(q_score(t, r), 6) << ',' << fixed(tc_score(t, r), 6) << ',' << fixed(modeler_score(t, r), 6)
            << ',' << fixed(sp_score(t, model, gaps, !no_terminal), 4) << '\n';
        return 0;
    }
};

struct SynthFlags {
    EvolveParams params;
    std::size_t clusters = 1;
    double stem_scale = 4.0;
    std::string alphabet = "protein";

    void add(CLI::App& app, std::vector<CLI::Option*>* group = nullptr) {
        std::vector<CLI::Option*> opts{
            app.add_option("--root-len", params.root_len, "Root sequence length"),
            app.add_option("--n-seqs", params.n_seqs, "Number of leaf sequences"),
            app.add_option("--sub-rate", params.sub_rate, "Substitution probability per site per branch"),
            app.add_option("--indel-rate", params.indel_rate, "Indel probability per site per branch"),
            app.add_option("--mean-indel-len", params.mean_indel_len, "Mean indel length (geometric)"),
            app.add_option("--depth-scale", params.tree_depth_scale, "Multiplier on branch rates (divergence)"),
            app.add_option("--clusters", clusters, "Clades within the family"),
            app.add_option("--stem-scale", stem_scale, "Stem rate multiplier for the last clade; clade c gets (c+1)/clusters of it"),
        };
        if (group) group->insert(group->end(), opts.begin(), opts.end());
    }

    SynthData make(std::uint64_t seed, const Alphabet& alpha) {
        params.seed = seed;
        try {
            params.validate();
            if (clusters == 1) return generate(params, alpha);
            return generate_clustered({params, clusters, stem_scale}, alpha);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

struct SynthCmd {
    SynthFlags synth;
    std::uint64_t seed = 1;
    std::string out, ref;
    std::string alphabet = "protein";

    int run(std::ostream& out_stream) {
        const auto data = synth.make(seed, alphabet_of(alphabet, false));
        emit(out, write_fasta(data.seqs), out_stream);
        if (!ref.empty()) write_file(ref, write_fasta(data.truth));
        return 0;
    }
};

struct BenchCmd {
    PipelineFlags flags;
    SynthFlags synth;
    std::vector<std::size_t> workers{1, 2, 4, 8};
    std::string in, ref, out;
    bool quality = false;

    int run(std::ostream& out_stream, std::ostream& err, bool verbose) {
        if (quality && !in.empty() && ref.empty()) throw UsageError("--quality needs --ref when reading --in");
        if (workers.empty()) throw UsageError("--workers-list is empty");
        auto config = config_of(flags);

        std::vector<Sequence> seqs;
        std::optional<Alignment> truth;
        if (!in.empty()) {
            seqs = read_sequences(in, config.alphabet);
            if (!ref.empty()) truth = read_alignment(ref, config.alphabet);
        } else {
            auto data = synth.make(flags.seed, config.alphabet);
            seqs = std::move(data.seqs);
            truth = std::move(data.truth);
        }

        std::ostringstream csv;
        csv << "p,n,dp_cells,kmer_evals,local_rank_kmer_evals,bytes,wall_ms";
        if (quality) csv << ",q,tc,modeler";
        csv << '\n';
        for (std::size_t p : workers) {
            if (p == 0) throw UsageError("--workers-list entries must be positive");
            config.workers = p;
            const auto result = run_pipeline(seqs, config);
            const auto work = result.ledger.total_work();
            csv << p << ',' << seqs.size() << ',' << work.dp_cells << ',' << work.kmer_evals << ','
                << result.ledger.stage_work(Stage::kLocalRank).kmer_evals << ',' << result.ledger.total_bytes() << ','
                << fixed(result.ledger.total_wall_ms(), 3);
            if (quality) {
                csv << ',' << fixed(q_score(result.alignment, *truth), 6) << ','
                    << fixed(tc_score(result.alignment, *truth), 6) << ','
                    << fixed(modeler_score(result.alignment, *truth), 6);
            }
            csv << '\n';
            if (verbose) err << "p=" << p << " done\n";
        }
        emit(out, csv.str(), out_stream);
        return 0;
    }
};

struct InspectCmd {
    PipelineFlags flags;
    std::string in, out, pivots;

    int run(const CLI::App& app, std::ostream& out_stream, std::ostream& err, bool verbose) {
        require(app, "--in");
        const auto config = config_of(flags);
        const auto seqs = read_sequences(in, config.alphabet);
        const auto d = decompose(seqs, config).decomposition;

        struct Row {
            std::size_t home = 0;
            double local = 0.0;
            double global = 0.0;
            std::size_t bucket = 0;
        };
        std::unordered_map<std::string, Row> rows;
        for (const auto& list : d.local_ranked)
            for (const auto& r : list) {
                rows[r.id].home = r.home_worker;
                rows[r.id].local = r.rank;
                rows[r.id].global = r.rank;
            }
        for (const auto& list : d.global_ranked)
            for (const auto& r : list) rows[r.id].global = r.rank;
        for (std::size_t b = 0; b < d.buckets.size(); ++b)
            for (const auto& id : d.buckets[b]) rows[id].bucket = b;

        std::ostringstream csv;
        csv << "id,input_index,home_worker,local_rank,global_rank,bucket\n";
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            const auto& r = rows.at(seqs[i].id());
            csv << seqs[i].id() << ',' << i << ',' << r.home << ',' << fixed(r.local, 6) << ',' << fixed(r.global, 6)
                << ',' << r.bucket << '\n';
        }
        emit(out, csv.str(), out_stream);

        std::ostringstream piv;
        for (double v : d.pivots.pivots) piv << fixed(v, 6) << '\n';
        if (!pivots.empty()) write_file(pivots, piv.str());
        if (verbose) {
            err << "pivots:";
            for (double v : d.pivots.pivots) err << ' ' << fixed(v, 6);
            err << "\nbucket sizes:";
            for (const auto& b : d.buckets) err << ' ' << b.size();
            err << '\n';
        }
        return 0;
    }
};

const CLI::App* selected(const CLI::App& app) {
    for (const auto* sub : app.get_subcommands({})) {
        if (sub->parsed() > 0) return sub;
    }
    return &app;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distributed multiple sequence alignment by k-mer rank decomposition", "dmsa"};
    app.require_subcommand(1);
    app.fallthrough();
    bool verbose = false;
    std::string config_path;
    app.add_flag("-v,--verbose", verbose, "Diagnostics on stderr");
    app.add_option("--config", config_path, "key=value defaults for the subcommand's long options");

    AlignCmd align;
    auto* align_app = app.add_subcommand("align", "Align a FASTA file");
    add_pipeline_flags(*align_app, align.flags, true);
    align_app->add_option("--in", align.in, "Input FASTA");
    align_app->add_option("--out", align.out, "Output aligned FASTA (default: stdout)");
    align_app->add_option("--ledger", align.ledger, "Per stage/worker cost CSV");
    align_app->add_option("--messages", align.messages, "Message log CSV");

    ScoreCmd score;
    auto* score_app = app.add_subcommand("score", "Score a test alignment against a reference");
    score_app->add_option("--test", score.test, "Test alignment (aligned FASTA)");
    score_app->add_option("--ref", score.ref, "Reference alignment (aligned FASTA)");
    add_scoring_flags(*score_app, score.matrix, score.open, score.extend);
    add_alphabet_flags(*score_app, score.alphabet, score.wildcard);
    score_app->add_flag("--no-terminal-gaps", score.no_terminal, "Do not charge end gaps in the SP score");

    SynthCmd synth;
    auto* synth_app = app.add_subcommand("synth", "Generate sequences with a known alignment");
    synth.synth.add(*synth_app);
    synth_app->add_option("--seed", synth.seed, "Random seed");
    synth_app->add_option("--alphabet", synth.alphabet, "Residue alphabet")->check(CLI::IsMember({"protein", "dna"}));
    synth_app->add_option("--out", synth.out, "Sequences FASTA (default: stdout)");
    synth_app->add_option("--ref", synth.ref, "True alignment, aligned FASTA");

    BenchCmd bench;
    auto* bench_app = app.add_subcommand("bench", "Run the pipeline over a sweep of worker counts");
    add_pipeline_flags(*bench_app, bench.flags, false);
    std::vector<CLI::Option*> synth_opts;
    bench.synth.add(*bench_app, &synth_opts);
    auto* bench_in = bench_app->add_option("--in", bench.in, "Input FASTA (default: synthetic data)");
    for (auto* o : synth_opts) bench_in->excludes(o);
    bench_app->add_option("--ref", bench.ref, "Reference alignment for --quality")->needs(bench_in);
    bench_app->add_option("--workers-list", bench.workers, "Worker counts, comma separated")->delimiter(',');
    bench_app->add_flag("--quality", bench.quality, "Score each run against the reference");
    bench_app->add_option("--out", bench.out, "CSV report (default: stdout)");

    InspectCmd inspect;
    auto* inspect_app = app.add_subcommand("partition-inspect", "Show ranks, pivots and buckets without aligning");
    add_pipeline_flags(*inspect_app, inspect.flags, true);
    inspect_app->add_option("--in", inspect.in, "Input FASTA");
    inspect_app->add_option("--out", inspect.out, "CSV (default: stdout)");
    inspect_app->add_option("--pivots", inspect.pivots, "Write pivots, one per line");

    auto usage = [&](const std::string& message) {
        err << "error: " << message << "\n\n" << selected(app)->help();
        return 1;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_config(*sub, config_path);
        if (sub == align_app) return align.run(*align_app, verbose, out, err);
        if (sub == score_app) return score.run(*score_app, out);
        if (sub == synth_app) return synth.run(out);
        if (sub == bench_app) return bench.run(out, err, verbose);
        return inspect.run(*inspect_app, out, err, verbose);
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const ExternalAlignerError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace dmsa::cli
