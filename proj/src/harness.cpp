#include "subsum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

#include "subsum/oracle.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum {

using Json = nlohmann::ordered_json;

void enumerate_sequences(const GroupPtr& g, std::size_t length, bool canonicalize,
                         const std::function<void(const GSequence&)>& f) {
    const std::size_t order = g->order();
    std::vector<std::uint32_t> counts(order, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == order) {
            counts[i] = static_cast<std::uint32_t>(left);
            GSequence s(g, counts);
            if (!canonicalize || canonical_translate(s) == s) f(s);
            counts[i] = 0;
            return;
        }
        for (std::size_t k = left + 1; k-- > 0;) {
            counts[i] = static_cast<std::uint32_t>(k);
            rec(i + 1, left - k);
        }
        counts[i] = 0;
    };
    rec(0, length);
}

std::vector<GSequence> enumerate_sequences(const GroupPtr& g, std::size_t length, bool canonicalize) {
    std::vector<GSequence> out;
    enumerate_sequences(g, length, canonicalize, [&](const GSequence& s) { out.push_back(s); });
    return out;
}

GSequence canonical_translate(const GSequence& s) {
    const Group& g = s.g();
    std::vector<std::uint32_t> best = s.counts(), cand(g.order());
    for (std::uint32_t t = 1; t < g.order(); ++t) {
        for (std::uint32_t e = 0; e < g.order(); ++e) cand[g.add_index(e, t)] = s.counts()[e];
        if (cand > best) best = cand;
    }
    return GSequence(s.group(), best);
}

namespace {

std::string element_text(const Group& g, Element e) { return g.format_element(e); }

std::string fnv_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
    return out;
}

std::string theorem_flag(TheoremTag t) {
    switch (t) {
        case TheoremTag::Main: return "main";
        case TheoremTag::LargeN: return "large-n";
        case TheoremTag::Special: return "special";
    }
    return "?";
}

Json config_object(const CampaignConfig& c) {
    Json j;
    Json groups = Json::array();
    for (const auto& g : c.groups) groups.push_back(make_group(g)->spec_string());
    j["groups"] = groups;
    j["max_len"] = c.max_len;
    j["n"] = c.n_range ? std::to_string(c.n_range->first) + ".." + std::to_string(c.n_range->second) : "all";
    j["x"] = c.x_policy == XPolicy::Identity
                 ? std::string("identity")
                 : "sample:" + std::to_string(c.x_samples) + ":" + std::to_string(c.x_seed);
    j["l"] = c.l_policy == LPolicy::Trivial ? "trivial" : "all";
    Json theorems = Json::array();
    for (auto t : c.theorems) theorems.push_back(theorem_flag(t));
    j["theorems"] = theorems;
    j["canonicalize"] = c.canonicalize;
    j["exhaustive_threshold"] = c.exhaustive_threshold;
    j["oracle"] = c.oracle;
    return j;
}

GroupPtr cert_group(const TheoremCertificate& cert) {
    if (cert.partition) return cert.partition->group();
    if (cert.L) return cert.L->group();
    if (cert.K) return cert.K->group();
    if (cert.H) return cert.H->group();
    if (cert.Z) return cert.Z->group();
    return nullptr;
}

Json certificate_object(const TheoremCertificate& cert) {
    Json j;
    j["theorem"] = to_string(cert.theorem);
    j["item"] = cert.item;
    if (cert.partition) j["partition"] = cert.partition->to_string();
    auto subgroup = [&](const char* key, const std::optional<Subgroup>& h) {
        if (h) j[key] = h->members().to_string();
    };
    subgroup("H", cert.H);
    subgroup("K", cert.K);
    subgroup("L", cert.L);
    auto element = [&](const char* key, const std::optional<Element>& e) {
        if (!e) return;
        if (const GroupPtr g = cert_group(cert)) j[key] = element_text(*g, *e);
    };
    element("alpha", cert.alpha);
    element("beta", cert.beta);
    element("x", cert.x);
    element("d", cert.d);
    if (cert.Z) j["Z"] = cert.Z->to_string();
    if (cert.m) j["m"] = *cert.m;
    if (cert.j) j["j"] = *cert.j;
    if (!cert.index_set.empty()) j["index_set"] = cert.index_set;
    if (cert.max_sumset) j["max_sumset"] = *cert.max_sumset;
    j["heuristic"] = cert.heuristic;
    j["route"] = cert.route;
    Json checks = Json::array();
    for (const auto& c : cert.checks) checks.push_back(Json{{"clause", c.clause}, {"pass", c.pass}});
    j["checks"] = checks;
    return j;
}

struct Instance {
    TheoremTag theorem;
    GSequence s;
    std::size_t n;
    GroupSet x;
    Subgroup l;
    GSequence sprime;
};

struct Outcome {
    std::string record;
    std::string item_key;
    bool certified = false;
    bool validation_failure = false;
    bool oracle_mismatch = false;
    bool gap = false;
    bool heuristic = false;
};

std::vector<GroupSet> x_universe(const CampaignConfig& c, const GroupPtr& g) {
    std::vector<GroupSet> xs;
    if (c.x_policy == XPolicy::Identity) {
        xs.push_back(GroupSet::singleton(g, g->identity()));
        return xs;
    }
    std::mt19937_64 rng(c.x_seed ^ std::hash<std::string>{}(g->spec_string()));
    const Mask full = g->full_mask();
    const double available = std::pow(2.0, static_cast<double>(g->order())) - 1;
    const std::size_t want = static_cast<std::size_t>(std::min<double>(static_cast<double>(c.x_samples), available));
    std::vector<Mask> seen;
    while (seen.size() < want) {
        Mask m;
        for (std::size_t i = 0; i < g->order(); ++i)
            if (rng() & 1U) m.set(i);
        m &= full;
        if (m.none() || std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
        seen.push_back(m);
    }
    for (const auto& m : seen) xs.emplace_back(g, m);
    return xs;
}

std::vector<Subgroup> l_universe(const CampaignConfig& c, const GroupSet& x) {
    if (c.l_policy == LPolicy::Trivial) return {Subgroup::trivial(x.group())};
    const Subgroup hx = stabilizer(x);
    std::vector<Subgroup> out;
    for (const auto& h : enumerate_subgroups(x.group()))
        if (h.subgroup_of(hx)) out.push_back(h);
    return out;
}

// The first ell terms of the capped sequence, dropping highest indices.
GSequence trimmed(const GSequence& capped, std::size_t ell) {
    auto counts = capped.counts();
    std::size_t excess = capped.length() - ell;
    for (std::size_t i = counts.size(); i-- > 0 && excess > 0;) {
        const auto take = std::min<std::size_t>(counts[i], excess);
        counts[i] -= static_cast<std::uint32_t>(take);
        excess -= take;
    }
    return GSequence(capped.group(), counts);
}

std::vector<Instance> build_instances(const CampaignConfig& c) {
    std::vector<Instance> out;
    for (const auto& spec : c.groups) {
        const GroupPtr g = make_group(spec);
        const auto xs = x_universe(c, g);
        for (std::size_t len = 1; len <= c.max_len; ++len) {
            const std::size_t lo = c.n_range ? std::max<std::size_t>(1, c.n_range->first) : 1;
            const std::size_t hi = c.n_range ? std::min(len, c.n_range->second) : len;
            enumerate_sequences(g, len, c.canonicalize, [&](const GSequence& s) {
                for (auto theorem : c.theorems) {
                    if (theorem == TheoremTag::Special) {
                        for (std::size_t n = lo; n <= hi && n < len; ++n)
                            if (special_hypothesis_holds(s, n))
                                out.push_back(Instance{theorem, s, n, GroupSet::singleton(g, g->identity()),
                                                       Subgroup::trivial(g), s});
                        continue;
                    }
                    for (const auto& x : xs)
                        for (const auto& l : l_universe(c, x))
                            for (std::size_t n = lo; n <= hi; ++n) {
                                const GSequence capped = max_bounded_subsequence(s, n, l);
                                std::size_t top = capped.length();
                                if (theorem == TheoremTag::LargeN) top = std::min(top, 2 * n);
                                for (std::size_t ell = n; ell <= top; ++ell)
                                    out.push_back(Instance{theorem, s, n, x, l, trimmed(capped, ell)});
                            }
                }
            });
        }
    }
    return out;
}

Outcome run_instance(const Instance& inst, const CampaignConfig& c, std::size_t index) {
    Outcome o;
    const GroupPtr& g = inst.s.group();
    Json j;
    j["type"] = "instance";
    j["index"] = index;
    j["theorem"] = theorem_flag(inst.theorem);
    j["group"] = g->spec_string();
    j["S"] = inst.s.to_string();
    j["n"] = inst.n;
    if (inst.theorem != TheoremTag::Special) {
        j["X"] = inst.x.to_string();
        j["L"] = inst.l.members().to_string();
        j["Sprime"] = inst.sprime.to_string();
    }
    const EngineOptions opts{c.exhaustive_threshold};
    const TheoremInput in{inst.x, inst.l, inst.s, inst.sprime, inst.n};
    try {
        TheoremCertificate cert;
        switch (inst.theorem) {
            case TheoremTag::Main: cert = main_partition_certificate(in, opts); break;
            case TheoremTag::LargeN: cert = large_n_certificate(in, opts); break;
            case TheoremTag::Special: cert = special_structure_certificate(inst.s, inst.n, opts); break;
        }
        o.certified = true;
        o.heuristic = cert.heuristic;
        o.item_key = std::string(to_string(cert.theorem)) + ":" + std::to_string(cert.item);
        j["status"] = "certified";
        j["certificate"] = certificate_object(cert);

        if (c.oracle && inst.theorem == TheoremTag::Main && inst.l.is_trivial() && !cert.heuristic) {
            Json oracle;
            try {
                const std::size_t ell = inst.sprime.length();
                const auto best = oracle_max_sumset_over(inst.x, inst.s, ell, inst.n);
                const std::size_t oracle_max = best ? best->first : 0;
                oracle["max_sumset"] = oracle_max;
                oracle["match"] = cert.max_sumset && *cert.max_sumset == oracle_max;
                o.oracle_mismatch = !oracle["match"].get<bool>();
                const bool identity_x = inst.x.size() == 1 && inst.x.contains(g->identity());
                if (cert.item == 3 && identity_x) {
                    // Exceptional case: only a non-equitable partition reaches the bound.
                    const std::size_t target = ell - inst.n + 1;
                    const auto eq = oracle_max_sumset_over(inst.x, inst.s, ell, inst.n, true);
                    const std::size_t eq_max = eq ? eq->first : 0;
                    oracle["equitable_max_sumset"] = eq_max;
                    oracle["tight"] = eq_max < target && oracle_max >= target;
                    o.oracle_mismatch = o.oracle_mismatch || !oracle["tight"].get<bool>();
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Capacity) throw;
                oracle["skipped"] = "capacity";
            }
            j["oracle"] = oracle;
        }
    } catch (const SoundnessError& e) {
        o.validation_failure = true;
        j["status"] = "validation_failure";
        j["error"] = e.what();
        j["certificate"] = certificate_object(e.certificate());
    } catch (const Error& e) {
        o.gap = true;
        j["status"] = "gap";
        j["error"] = e.what();
    }
    o.record = j.dump();
    return o;
}

void validate_config(const CampaignConfig& c) {
    if (c.groups.empty()) fail(ErrorKind::InvalidSpec, "no groups configured");
    if (c.max_len < 1) fail(ErrorKind::InvalidSpec, "max length must be positive");
    if (c.jobs < 1) fail(ErrorKind::InvalidSpec, "jobs must be positive");
    if (c.theorems.empty()) fail(ErrorKind::InvalidSpec, "no theorem selected");
    if (c.n_range && (c.n_range->first < 1 || c.n_range->first > c.n_range->second))
        fail(ErrorKind::InvalidSpec, "n range must satisfy 1 <= A <= B");
    if (c.x_policy == XPolicy::Sample && c.x_samples < 1) fail(ErrorKind::InvalidSpec, "sample count must be positive");
    for (const auto& g : c.groups) make_group(g);
}

}  // namespace

std::string config_json(const CampaignConfig& config) { return config_object(config).dump(); }

std::string config_hash(const CampaignConfig& config) { return fnv_hex(config_json(config)); }

void emit_report(const std::string& record, std::ostream& sink) {
    sink << record << '\n';
    if (!sink) fail(ErrorKind::Io, "failed to write report record");
}

std::string certificate_json(const TheoremCertificate& cert) { return certificate_object(cert).dump(); }

std::string certificate_text(const TheoremCertificate& cert) {
    std::string out = std::string("theorem ") + to_string(cert.theorem) + ", item " + std::to_string(cert.item) + "\n";
    const Json j = certificate_object(cert);
    for (const auto& [key, value] : j.items()) {
        if (key == "theorem" || key == "item" || key == "checks") continue;
        out += "  " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    out += "  checks:\n";
    for (const auto& c : cert.checks) out += std::string("    [") + (c.pass ? "pass" : "FAIL") + "] " + c.clause + "\n";
    return out;
}

CampaignSummary run_campaign(const CampaignConfig& config) {
    if (config.out.empty() || config.out == "-") return run_campaign(config, std::cout);
    std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
    if (!file) fail(ErrorKind::Io, "cannot open " + config.out);
    return run_campaign(config, file);
}

CampaignSummary run_campaign(const CampaignConfig& config, std::ostream& sink) {
    validate_config(config);
    const std::vector<Instance> instances = build_instances(config);
    const std::size_t total = instances.size();

    Json header;
    header["type"] = "header";
    header["version"] = kLibraryVersion;
    header["config_hash"] = config_hash(config);
    header["config"] = config_object(config);
    header["seed"] = config.x_seed;
    header["instances"] = total;
    emit_report(header.dump(), sink);

    // Static chunking; the writer restores generation order.
    constexpr std::size_t kChunk = 16;
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, (total + kChunk - 1) / kChunk));
    std::vector<std::optional<Outcome>> slots(total);
    std::mutex mu;
    std::condition_variable ready;

    auto work = [&](std::size_t w) {
        for (std::size_t chunk = w; chunk * kChunk < total; chunk += workers) {
            const std::size_t end = std::min(total, (chunk + 1) * kChunk);
            for (std::size_t i = chunk * kChunk; i < end; ++i) {
                Outcome o = run_instance(instances[i], config, i);
                std::lock_guard lock(mu);
                slots[i] = std::move(o);
                ready.notify_all();
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers && total > 0; ++w) pool.emplace_back(work, w);

    CampaignSummary summary;
    summary.instances = total;
    try {
        for (std::size_t i = 0; i < total; ++i) {
            Outcome o;
            {
                std::unique_lock lock(mu);
                ready.wait(lock, [&] { return slots[i].has_value(); });
                o = std::move(*slots[i]);
                slots[i].reset();
            }
            emit_report(o.record, sink);
            if (o.certified) {
                ++summary.certified;
                ++summary.items[o.item_key];
            }
            summary.validation_failures += o.validation_failure;
            summary.oracle_mismatches += o.oracle_mismatch;
            summary.gaps += o.gap;
            summary.heuristic += o.heuristic;
        }
    } catch (...) {
        for (auto& t : pool) t.join();
        sink << "{\"type\":\"partial\"}\n";
        throw;
    }
    for (auto& t : pool) t.join();

    Json s;
    s["type"] = "summary";
    s["instances"] = summary.instances;
    s["certified"] = summary.certified;
    s["items"] = summary.items;
    s["validation_failures"] = summary.validation_failures;
    s["oracle_mismatches"] = summary.oracle_mismatches;
    s["gaps"] = summary.gaps;
    s["heuristic"] = summary.heuristic;
    s["ok"] = summary.ok();
    emit_report(s.dump(), sink);
    return summary;
}

}  // namespace subsum
