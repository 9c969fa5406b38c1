// subsum: campaign runner and one-shot inspection tool.

#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "subsum/harness.hpp"
#include "subsum/oracle.hpp"
#include "subsum/set_algebra.hpp"
#include "subsum/text.hpp"

using namespace subsum;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct VerifyArgs {
    std::vector<std::string> groups;
    std::size_t max_len = 4;
    std::string n = "all";
    std::string x = "identity";
    std::string l = "trivial";
    std::string theorem = "main";
    bool canonicalize = false;
    std::size_t jobs = 1;
    std::string out = "-";
    double threshold = 1e6;
    bool no_oracle = false;
};

struct InstanceArgs {
    std::string group;
    std::string s;
    std::size_t n = 1;
    std::string x;
    std::string l;
    std::string sprime;
    std::string theorem = "main";
    bool json = false;
    std::size_t ell = 0;
    bool equitable = false;
};

struct PrimitiveArgs {
    std::string group;
    std::string a, b, s;
    std::size_t n = 0;
};

std::vector<std::uint32_t> group_orders(const std::string& text) {
    return parse_group(text)->orders();
}

std::vector<TheoremTag> theorems_from(const std::string& t) {
    if (t == "main") return {TheoremTag::Main};
    if (t == "large-n") return {TheoremTag::LargeN};
    if (t == "special") return {TheoremTag::Special};
    if (t == "all") return {TheoremTag::Main, TheoremTag::LargeN, TheoremTag::Special};
    fail(ErrorKind::InvalidSpec, "unknown theorem '" + t + "'");
}

CampaignConfig campaign_from(const VerifyArgs& a) {
    CampaignConfig c;
    if (a.groups.empty()) fail(ErrorKind::InvalidSpec, "at least one --group is required");
    for (const auto& g : a.groups) c.groups.push_back(group_orders(g));
    c.max_len = a.max_len;
    std::smatch m;
    if (a.n != "all") {
        static const std::regex range(R"((\d+)\.\.(\d+))");
        if (!std::regex_match(a.n, m, range)) fail(ErrorKind::InvalidSpec, "--n expects all or A..B");
        c.n_range = std::pair<std::size_t, std::size_t>(std::stoul(m[1]), std::stoul(m[2]));
    }
    if (a.x != "identity") {
        static const std::regex sample(R"(sample:(\d+):(\d+))");
        if (!std::regex_match(a.x, m, sample)) fail(ErrorKind::InvalidSpec, "--x expects identity or sample:K:SEED");
        c.x_policy = XPolicy::Sample;
        c.x_samples = std::stoul(m[1]);
        c.x_seed = std::stoull(m[2]);
    }
    if (a.l == "all") c.l_policy = LPolicy::All;
    else if (a.l != "trivial") fail(ErrorKind::InvalidSpec, "--l expects trivial or all");
    c.theorems = theorems_from(a.theorem);
    c.canonicalize = a.canonicalize;
    c.jobs = a.jobs;
    c.out = a.out;
    c.exhaustive_threshold = a.threshold;
    c.oracle = !a.no_oracle;
    return c;
}

int run_verify(const VerifyArgs& a) {
    const CampaignConfig c = campaign_from(a);
    const CampaignSummary s = run_campaign(c);
    std::cerr << "instances " << s.instances << ", certified " << s.certified << ", validation failures "
              << s.validation_failures << ", oracle mismatches " << s.oracle_mismatches << ", gaps " << s.gaps
              << ", heuristic " << s.heuristic << "\n";
    for (const auto& [key, count] : s.items) std::cerr << "  " << key << ": " << count << "\n";
    return s.ok() ? 0 : kExitFailure;
}

TheoremInput input_from(const InstanceArgs& a, const GroupPtr& g) {
    const GSequence s = parse_sequence(g, a.s);
    const GroupSet x = a.x.empty() ? GroupSet::singleton(g, g->identity()) : parse_set(g, a.x);
    const Subgroup l = a.l.empty() ? Subgroup::trivial(g) : Subgroup::from_set(parse_set(g, a.l));
    const GSequence sprime = a.sprime.empty() ? max_bounded_subsequence(s, a.n, l) : parse_sequence(g, a.sprime);
    return TheoremInput{x, l, s, sprime, a.n};
}

int run_cert(const InstanceArgs& a) {
    const GroupPtr g = parse_group(a.group);
    TheoremCertificate cert;
    try {
        if (a.theorem == "special") {
            cert = special_structure_certificate(parse_sequence(g, a.s), a.n);
        } else {
            const TheoremInput in = input_from(a, g);
            if (a.theorem == "main") cert = main_partition_certificate(in);
            else if (a.theorem == "large-n") cert = large_n_certificate(in);
            else fail(ErrorKind::InvalidSpec, "--theorem expects main, large-n or special");
        }
    } catch (const SoundnessError& e) {
        std::cout << (a.json ? certificate_json(e.certificate()) + "\n" : certificate_text(e.certificate()));
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::cout << (a.json ? certificate_json(cert) + "\n" : certificate_text(cert));
    return 0;
}

int run_oracle(const InstanceArgs& a) {
    const GroupPtr g = parse_group(a.group);
    const GSequence s = parse_sequence(g, a.s);
    const GroupSet x = a.x.empty() ? GroupSet::singleton(g, g->identity()) : parse_set(g, a.x);
    std::cout << "subsums: " << oracle_subsums(s, a.n).to_string() << "\n";
    const std::size_t ell = a.ell ? a.ell : s.length();
    const auto best = oracle_max_sumset_over(x, s, ell, a.n, a.equitable);
    if (!best) {
        std::cout << "max_sumset: none\n";
        return 0;
    }
    std::cout << "max_sumset: " << best->first << "\nwitness: " << best->second.to_string() << "\n";
    return 0;
}

void add_group_option(CLI::App* app, std::string& target) {
    app->add_option("--group", target, "factor orders, e.g. 2,4")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Setpartition sumset certifier"};
    app.require_subcommand(1);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "run a verification campaign");
    v->add_option("--group", verify.groups, "factor orders (repeatable)")->required();
    v->add_option("--max-len", verify.max_len, "maximum sequence length");
    v->add_option("--n", verify.n, "all or A..B");
    v->add_option("--x", verify.x, "identity or sample:K:SEED");
    v->add_option("--l", verify.l, "trivial or all");
    v->add_option("--theorem", verify.theorem, "main, large-n, special or all");
    v->add_flag("--canonicalize", verify.canonicalize, "keep one translate per sequence");
    v->add_option("--jobs", verify.jobs, "worker threads");
    v->add_option("--out", verify.out, "report path, - for stdout");
    v->add_option("--exhaustive-threshold", verify.threshold, "largest exhaustive search size");
    v->add_flag("--no-oracle", verify.no_oracle, "skip brute-force comparison");

    InstanceArgs inst;
    auto* c = app.add_subcommand("cert", "certify a single instance");
    add_group_option(c, inst.group);
    c->add_option("--S", inst.s, "sequence, e.g. (0)^[2]*(1)")->required();
    c->add_option("--n", inst.n, "number of parts")->required();
    c->add_option("--X", inst.x, "translating set (default identity)");
    c->add_option("--L", inst.l, "subgroup as a set (default trivial)");
    c->add_option("--Sprime", inst.sprime, "subsequence (default the largest admissible)");
    c->add_option("--theorem", inst.theorem, "main, large-n or special");
    c->add_flag("--json", inst.json, "emit JSON");

    auto* o = app.add_subcommand("oracle", "brute-force maximum for one instance");
    add_group_option(o, inst.group);
    o->add_option("--S", inst.s, "sequence")->required();
    o->add_option("--n", inst.n, "number of parts")->required();
    o->add_option("--X", inst.x, "translating set (default identity)");
    o->add_option("--ell", inst.ell, "subsequence length (default |S|)");
    o->add_flag("--equitable", inst.equitable, "only equitable partitions");

    PrimitiveArgs prim;
    auto* p = app.add_subcommand("primitives", "one-shot set computations");
    p->require_subcommand(1);
    auto* p_sum = p->add_subcommand("sumset", "A + B");
    add_group_option(p_sum, prim.group);
    p_sum->add_option("--A", prim.a)->required();
    p_sum->add_option("--B", prim.b)->required();
    auto* p_stab = p->add_subcommand("stabilizer", "H(A)");
    add_group_option(p_stab, prim.group);
    p_stab->add_option("--A", prim.a)->required();
    auto* p_subsums = p->add_subcommand("subsums", "n-term subsums of S");
    add_group_option(p_subsums, prim.group);
    p_subsums->add_option("--S", prim.s)->required();
    p_subsums->add_option("--n", prim.n)->required();
    auto* p_subgroups = p->add_subcommand("subgroups", "every subgroup");
    add_group_option(p_subgroups, prim.group);
    auto* p_dec = p->add_subcommand("decompose", "reduced quasi-periodic decomposition of A");
    add_group_option(p_dec, prim.group);
    p_dec->add_option("--A", prim.a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*v) return run_verify(verify);
        if (*c) return run_cert(inst);
        if (*o) return run_oracle(inst);
        const GroupPtr g = parse_group(prim.group);
        if (*p_sum) {
            std::cout << sumset(parse_set(g, prim.a), parse_set(g, prim.b)).to_string() << "\n";
        } else if (*p_stab) {
            std::cout << stabilizer(parse_set(g, prim.a)).members().to_string() << "\n";
        } else if (*p_subsums) {
            std::cout << subsum_set(parse_sequence(g, prim.s), prim.n).to_string() << "\n";
        } else if (*p_subgroups) {
            for (const auto& h : enumerate_subgroups(g)) std::cout << h.members().to_string() << "\n";
        } else if (*p_dec) {
            const auto d = reduced_quasi_periodic_decomposition(parse_set(g, prim.a));
            std::cout << "H: " << d.subgroup.members().to_string() << "\nperiodic: " << d.periodic_part.to_string()
                      << "\nremainder: " << d.remainder.to_string() << "\nreduced: " << (d.reduced ? "yes" : "no")
                      << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidSpec:
            case ErrorKind::Parse:
            case ErrorKind::Capacity:
            case ErrorKind::GroupMismatch:
            case ErrorKind::InvalidSubgroup:
            case ErrorKind::HypothesisNotMet:
            case ErrorKind::Range:
            case ErrorKind::NotSubsequence:
            case ErrorKind::Precondition:
                return kExitConfig;
            default:
                return kExitFailure;
        }
    }
}
