#include "rigidrel/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rigidrel/construct.hpp"
#include "rigidrel/parallel.hpp"
#include "rigidrel/rigidity.hpp"
#include "rigidrel/strongrigid.hpp"

namespace rigidrel
{

namespace
{
    unsigned default_jobs()
    {
        if (const char * env = std::getenv("RIGIDREL_JOBS")) {
            try {
                const long v = std::stol(env);
                if (v >= 1)
                    return static_cast<unsigned>(v);
            }
            catch (const std::exception &) {
            }
        }
        return 1;
    }

    Json report_to_json(const Relation & rho, int ell, const RigidityReport & r)
    {
        Json j;
        j["rigid"] = r.rigid;
        j["k"] = rho.k();
        j["h"] = rho.arity();
        j["ell"] = ell;
        j["failing_side"] = to_string(r.failing_side);
        j["failing_function"] = r.failing_function ? unary_to_json(*r.failing_function) : Json(nullptr);
        if (r.witness_tuple)
            j["witness_tuple"] = *r.witness_tuple;
        if (!r.note.empty())
            j["note"] = r.note;
        return j;
    }

    Json witness_to_json(const NontrivialityWitness & w)
    {
        return Json{{"h", w.h}, {"t", w.t}, {"rows", w.rows}, {"violated", w.violated()}};
    }

    struct CheckArgs
    {
        std::string relation;
        int ell = 2;
        unsigned jobs = 1;
    };

    int cmd_check(const CheckArgs & a, std::ostream & out)
    {
        const Relation rho = relation_from_json(read_json_file(a.relation));
        const RigidityReport r = is_hereditarily_ell_rigid(rho, a.ell, ScanOptions{a.jobs});
        out << report_to_json(rho, a.ell, r).dump() << '\n';
        return r.rigid ? kExitHolds : kExitFails;
    }

    struct ConstructArgs
    {
        int k = 2;
        int ell = 2;
        int h = 2;
        std::string out;
        bool compact = false;
        unsigned jobs = 1;
    };

    int cmd_construct(const ConstructArgs & a, std::ostream & out, std::ostream & err)
    {
        if (a.ell < 2)
            throw InvalidArgument("constructions need l >= 2; no relation is hereditarily 1-rigid");
        Relation rho = Relation(Domain{a.k}, std::max(1, a.h));
        if (a.ell == 2) {
            if (a.h >= 1 && !exists_2rigid(a.k, a.h))
                throw BoundError("violated: k(k-1) <= C(2^h-2, 2^(h-1)-1); "
                                 + (BigInt(a.k) * (a.k - 1)).str() + " > "
                                 + binomial((1L << a.h) - 2, (1L << (a.h - 1)) - 1).str());
            err << "bound: k(k-1) = " << (BigInt(a.k) * (a.k - 1)).str() << " <= C(2^h-2, 2^(h-1)-1) = "
                << binomial((1L << a.h) - 2, (1L << (a.h - 1)) - 1).str() << '\n';
            rho = construct_2rigid(a.k, a.h, ScanOptions{a.jobs});
        } else {
            if (a.ell < a.h && a.ell <= a.k && !ellrigid_bound_holds(a.k, a.ell, a.h))
                throw BoundError("violated: k^(l falling) <= C(s(h,l)-l!, (s(h,l)-l!)/2); "
                                 + falling_factorial(a.k, a.ell).str() + " > "
                                 + ellrigid_capacity(a.ell, a.h).str());
            if (a.ell < a.h && a.ell <= a.k)
                err << "bound: k^(l falling) = " << falling_factorial(a.k, a.ell).str()
                    << " <= C(s(h,l)-l!, (s(h,l)-l!)/2) = " << ellrigid_capacity(a.ell, a.h).str() << '\n';
            rho = construct_ellrigid(a.k, a.ell, a.h, ScanOptions{a.jobs});
        }
        const std::string text = relation_to_json(rho, a.compact).dump() + "\n";
        if (a.out.empty()) {
            out << text;
        } else {
            std::ofstream file(a.out);
            if (!file)
                throw EncodingError("cannot write " + a.out);
            file << text;
        }
        err << "verified: hereditarily " << a.ell << "-rigid, " << rho.size() << " tuples\n";
        return kExitHolds;
    }

    struct ClassifyArgs
    {
        ClassifyOptions opts;
        std::string out;
        std::string summary;
    };

    int cmd_classify(const ClassifyArgs & a, std::ostream & out, std::ostream & err)
    {
        const auto records = classify(a.opts);
        if (a.out.empty()) {
            write_jsonl(out, records);
        } else {
            std::ofstream file(a.out, a.opts.resume_from > 1 ? std::ios::app : std::ios::trunc);
            if (!file)
                throw EncodingError("cannot write " + a.out);
            write_jsonl(file, records);
        }
        const std::string csv = summary_csv(a.opts, records);
        if (a.summary.empty()) {
            err << csv;
        } else {
            std::ofstream file(a.summary);
            if (!file)
                throw EncodingError("cannot write " + a.summary);
            file << csv;
        }
        return kExitHolds;
    }

    struct BoundsArgs
    {
        int ell = 2;
        int h = 2;
        std::optional<long> k;
    };

    int cmd_bounds(const BoundsArgs & a, std::ostream & out)
    {
        if (a.ell < 1 || a.h < 1)
            throw InvalidArgument("bounds need l >= 1 and h >= 1");
        out << "quantity,value\n";
        out << "s(h;l)," << surjection_count(a.h, a.ell).str() << '\n';
        out << "sperner_bound," << sperner_bound(a.ell, a.h).str() << '\n';
        if (a.ell == 2)
            out << "max_k," << max_k_2rigid(a.h).str() << '\n';
        if (a.ell >= 2 && a.ell < a.h) {
            const RBounds r = r_bounds(a.ell, a.h);
            out << "r_lower," << r.lower.str() << '\n';
            out << "r_upper," << r.upper.str() << '\n';
        }
        if (a.k) {
            const long k = *a.k;
            if (k < 2 || a.ell > k)
                throw InvalidArgument("--k must satisfy k >= 2 and l <= k");
            out << "falling_factorial," << falling_factorial(k, a.ell).str() << '\n';
            out << "sperner_bound_holds," << (sperner_bound_holds(k, a.ell, a.h) ? "true" : "false") << '\n';
            if (a.ell == 2)
                out << "exists_2rigid," << (exists_2rigid(k, a.h) ? "true" : "false") << '\n';
            if (a.ell >= 3 && a.ell < a.h)
                out << "construction_bound_holds," << (ellrigid_bound_holds(k, a.ell, a.h) ? "true" : "false")
                    << '\n';
        }
        return kExitHolds;
    }

    struct StrongArgs
    {
        std::string suite;
        int n = 3;
        int h = 2;
        int arity_cap = 3;
        std::optional<int> dom_cap;
        std::string fn_file;
        unsigned jobs = 1;
    };

    int cmd_strong(const StrongArgs & a, std::ostream & out)
    {
        if (a.suite == "phi") {
            const PartialFn f = phi(a.n);
            Json preserves_all = Json::object();
            bool all = true;
            for (int h = 1; h < a.n; ++h) {
                const bool ok = phi_preserves_all(a.n, h);
                preserves_all[std::to_string(h)] = ok;
                all = all && ok;
            }
            const bool nontrivial = !is_trivial(f);
            const bool breaks_delta = !preserves(f, delta(1, a.n)).preserved;
            const bool holds = nontrivial && all && breaks_delta;
            out << Json{{"n", a.n},
                        {"nontrivial", nontrivial},
                        {"preserves_all", preserves_all},
                        {"preserves_delta_1_n", !breaks_delta},
                        {"holds", holds}}
                       .dump()
                << '\n';
            return holds ? kExitHolds : kExitFails;
        }
        if (a.suite == "witness") {
            if (a.fn_file.empty())
                throw InvalidArgument("--suite witness needs --fn-file");
            const PartialFn f = partial_fn_from_json(read_json_file(a.fn_file));
            if (f.k() != 2)
                throw InvalidArgument("witnesses are defined for functions on {0,1}");
            if (is_trivial(f)) {
                out << Json{{"trivial", true}}.dump() << '\n';
                return kExitFails;
            }
            const NontrivialityWitness w = witness_nontrivial(f);
            out << witness_to_json(w).dump() << '\n';
            return replay(f, w) ? kExitHolds : kExitFails;
        }
        if (a.suite == "chain") {
            const int dom_cap = a.dom_cap.value_or(1 << a.arity_cap);
            const ChainReport r = chain_inclusion(a.h, a.arity_cap, dom_cap, ScanOptions{a.jobs});
            Json j{{"h", a.h},
                   {"arity_cap", a.arity_cap},
                   {"dom_cap", dom_cap},
                   {"functions_checked", r.functions_checked},
                   {"separator", "phi(" + std::to_string(a.h + 1) + ")"},
                   {"separator_ok", r.separator_ok},
                   {"holds", r.holds}};
            j["counterexample"] = r.counterexample ? partial_fn_to_json(*r.counterexample) : Json(nullptr);
            out << j.dump() << '\n';
            return r.holds ? kExitHolds : kExitFails;
        }
        if (a.suite == "limit") {
            const LimitReport r = limit_is_trivial_clone(a.arity_cap, ScanOptions{a.jobs});
            Json j{{"arity_cap", a.arity_cap},
                   {"functions", r.functions},
                   {"trivial", r.trivial},
                   {"family_holds", r.family_holds},
                   {"square_family_holds", r.square_family_holds},
                   {"holds", r.holds}};
            j["counterexample"] = r.counterexample ? partial_fn_to_json(*r.counterexample) : Json(nullptr);
            out << j.dump() << '\n';
            return r.holds ? kExitHolds : kExitFails;
        }
        throw InvalidArgument("unknown suite " + a.suite);
    }
}

Json record_to_json(const ClassificationRecord & r)
{
    Json j{{"k", r.k},
           {"h", r.h},
           {"ell", r.ell},
           {"relation_rank", r.relation_rank},
           {"verdict", r.verdict}};
    j["failing_function"] = r.failing_function ? unary_to_json(*r.failing_function) : Json(nullptr);
    if (r.elapsed_micros)
        j["elapsed_micros"] = *r.elapsed_micros;
    return j;
}

std::vector<ClassificationRecord> classify(const ClassifyOptions & opts)
{
    const Domain d{opts.k};
    if (opts.h < 1)
        throw InvalidArgument("arity must be at least 1");
    const Rank tuples = checked_power(opts.k, opts.h, kClassifyMaxTuples);
    if (opts.ell < 1 || opts.ell > opts.k)
        throw InvalidArgument("l must satisfy 1 <= l <= k");
    const std::uint64_t end = tuples == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tuples);
    const std::uint64_t begin = std::max<std::uint64_t>(1, opts.resume_from);
    if (begin >= end)
        return {};

    std::vector<ClassificationRecord> records(end - begin);
    const unsigned jobs = std::max(1u, opts.jobs);
    run_workers(jobs, [&](unsigned w) {
        for (std::uint64_t code = begin + w; code < end; code += jobs) {
            const auto start = std::chrono::steady_clock::now();
            const Relation rho = Relation::from_code(d, opts.h, code);
            const RigidityReport report = is_hereditarily_ell_rigid(rho, opts.ell);
            ClassificationRecord & r = records[code - begin];
            r.k = opts.k;
            r.h = opts.h;
            r.ell = opts.ell;
            r.relation_rank = code;
            r.verdict = report.rigid;
            r.failing_function = report.failing_function;
            if (opts.timing)
                r.elapsed_micros = std::chrono::duration_cast<std::chrono::microseconds>(
                                       std::chrono::steady_clock::now() - start)
                                       .count();
        }
    });
    return records;
}

void write_jsonl(std::ostream & out, const std::vector<ClassificationRecord> & records)
{
    for (const auto & r : records)
        out << record_to_json(r).dump() << '\n';
}

std::string summary_csv(const ClassifyOptions & opts, const std::vector<ClassificationRecord> & records)
{
    std::size_t rigid = 0;
    for (const auto & r : records)
        rigid += r.verdict ? 1 : 0;
    std::ostringstream s;
    s << "k,h,ell,relations,rigid,not_rigid\n"
      << opts.k << ',' << opts.h << ',' << opts.ell << ',' << records.size() << ',' << rigid << ','
      << records.size() - rigid << '\n';
    return s.str();
}

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Hereditarily rigid relations: decision procedure, constructions and census"};
    app.name("rigidrel");
    app.require_subcommand(1);
    // --h is the arity, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    const unsigned jobs = default_jobs();

    CheckArgs check;
    check.jobs = jobs;
    auto * check_cmd = app.add_subcommand("check", "Decide hereditary l-rigidity of a relation file");
    check_cmd->add_option("--relation", check.relation, "Relation JSON file")->required();
    check_cmd->add_option("--ell", check.ell, "Threshold l")->required();
    check_cmd->add_option("--jobs", check.jobs, "Worker threads (default: RIGIDREL_JOBS or 1)");

    ConstructArgs construct;
    construct.jobs = jobs;
    auto * construct_cmd = app.add_subcommand("construct", "Build a verified hereditarily l-rigid relation");
    construct_cmd->add_option("--k", construct.k, "Domain size")->required();
    construct_cmd->add_option("--ell", construct.ell, "Threshold l")->required();
    construct_cmd->add_option("--h", construct.h, "Arity")->required();
    construct_cmd->add_option("--out", construct.out, "Output file (default: standard output)");
    construct_cmd->add_flag("--compact", construct.compact, "Emit the mask_hex form");
    construct_cmd->add_option("--jobs", construct.jobs, "Worker threads");

    ClassifyArgs classify_args;
    classify_args.opts.jobs = jobs;
    auto * classify_cmd = app.add_subcommand("classify", "Classify every nonempty relation with k^h <= 16");
    classify_cmd->add_option("--k", classify_args.opts.k, "Domain size")->required();
    classify_cmd->add_option("--h", classify_args.opts.h, "Arity")->required();
    classify_cmd->add_option("--ell", classify_args.opts.ell, "Threshold l")->required();
    classify_cmd->add_option("--jobs", classify_args.opts.jobs, "Worker threads");
    classify_cmd->add_option("--out", classify_args.out, "JSONL output file (default: standard output)");
    classify_cmd->add_option("--summary", classify_args.summary, "CSV summary file (default: standard error)");
    classify_cmd->add_option("--resume-from", classify_args.opts.resume_from, "First relation rank");
    classify_cmd->add_flag("--timing", classify_args.opts.timing, "Record elapsed_micros per relation");

    BoundsArgs bounds;
    auto * bounds_cmd = app.add_subcommand("bounds", "Exact counts and size bounds");
    bounds_cmd->add_option("--ell", bounds.ell, "Threshold l")->required();
    bounds_cmd->add_option("--h", bounds.h, "Arity")->required();
    bounds_cmd->add_option("--k", bounds.k, "Domain size");

    StrongArgs strong;
    strong.jobs = jobs;
    auto * strong_cmd = app.add_subcommand("strong", "Checks on the Delta_t^h families over {0,1}");
    strong_cmd->add_option("--suite", strong.suite, "phi | witness | chain | limit")
        ->required()
        ->check(CLI::IsMember({"phi", "witness", "chain", "limit"}));
    strong_cmd->add_option("--n", strong.n, "Arity of phi (phi suite)");
    strong_cmd->add_option("--h", strong.h, "Chain level (chain suite)");
    strong_cmd->add_option("--arity-cap", strong.arity_cap, "Largest function arity swept");
    strong_cmd->add_option("--dom-cap", strong.dom_cap, "Largest domain size swept (chain suite)");
    strong_cmd->add_option("--fn-file", strong.fn_file, "Partial function JSON file (witness suite)");
    strong_cmd->add_option("--jobs", strong.jobs, "Worker threads");

    std::vector<std::string> storage{"rigidrel"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto & s : storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError & e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitHolds : kExitError;
    }

    try {
        if (check_cmd->parsed())
            return cmd_check(check, out);
        if (construct_cmd->parsed())
            return cmd_construct(construct, out, err);
        if (classify_cmd->parsed())
            return cmd_classify(classify_args, out, err);
        if (bounds_cmd->parsed())
            return cmd_bounds(bounds, out);
        if (strong_cmd->parsed())
            return cmd_strong(strong, out);
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace rigidrel
