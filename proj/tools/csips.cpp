// csips: command-line driver for key generation, delegation, proxy signing
// and the warrant board. Artifact layout is described in FORMATS.md.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "csips/codec.hpp"
#include "csips/metrics.hpp"
#include "csips/rng.hpp"
#include "csips/scheme.hpp"
#include "csips/store.hpp"

using namespace csips;
using json = nlohmann::ordered_json;

namespace {

// Stable exit codes.
enum Exit : int
{
    kOk = 0,
    kReject = 1,
    kError = 2,
    kDecode = 3,
    kMismatch = 4,
    kBoard = 5,
    kUsage = 64,
};

constexpr char const *kBoardEnv = "CSIPS_BOARD";

class CliError : public std::runtime_error
{
    public:
        CliError(int code, std::string const &what) : std::runtime_error(what), code(code) {}
        int code;
};

struct Options
{
    std::string params;
    bool insecure = false;
    std::optional<std::string> seed;
    bool json = false;
    bool force = false;
    unsigned threads = 0;
};

Options opt;

void warn(std::string const &msg)
{
    std::cerr << "csips: warning: " << msg << "\n";
}

std::string slurp(std::string const &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError(kError, "cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

Bytes slurp_bytes(std::string const &path)
{
    auto s = slurp(path);
    return {s.begin(), s.end()};
}

void spit(std::string const &path, std::string const &text)
{
    if (!opt.force && std::filesystem::exists(path))
        throw CliError(kError, path + " exists; pass --force to overwrite");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush())
        throw CliError(kError, "cannot write " + path);
}

Rng make_rng()
{
    if (!opt.seed)
        return Rng::system();
    std::cerr << "csips: WARNING: --seed makes every output reproducible. Seeded signatures and\n"
                 "csips: WARNING: keys are for testing only; reusing a seed can leak the secret key.\n";
    return Rng::seeded(as_bytes(*opt.seed));
}

ParamSet resolve_params(std::string const &name)
{
    ParamSet ps;
    try {
        ps = paramset_by_name(name);
    } catch (std::invalid_argument const &e) {
        throw CliError(kUsage, e.what());
    }
    if (ps.insecure && !opt.insecure)
        throw CliError(kUsage, "parameter set '" + ps.name
                                   + "' is insecure; pass --insecure to use it anyway");
    return ps;
}

struct Artifact
{
    std::string path;
    Envelope env;
};

Artifact read_artifact(std::string const &path)
{
    try {
        return {path, dearmor(slurp(path))};
    } catch (DecodeError const &e) {
        throw CliError(kDecode, path + ": " + e.what());
    }
}

// The first artifact names the parameter set unless --params overrides it;
// every other artifact must agree.
void require_params(ParamSet const &ps, std::vector<Artifact const *> const &arts)
{
    auto fp = paramset_fingerprint(ps);
    for (auto const *a : arts)
        if (a->env.paramset != ps.name || a->env.fingerprint != fp)
            throw CliError(kMismatch, a->path + ": artifact belongs to parameter set '"
                                          + a->env.paramset + "', expected '" + ps.name + "'");
}

ParamSet params_for(std::vector<Artifact const *> const &arts)
{
    auto ps = resolve_params(opt.params.empty() ? arts.front()->env.paramset : opt.params);
    require_params(ps, arts);
    return ps;
}

void expect_kind(Artifact const &a, Kind k)
{
    if (a.env.kind != k)
        throw CliError(kDecode, a.path + ": expected " + std::string(kind_name(k)) + ", found "
                                    + std::string(kind_name(a.env.kind)));
}

template <class F>
auto decode_payload(Artifact const &a, F &&f)
{
    try {
        return f(ByteView(a.env.payload));
    } catch (DecodeError const &e) {
        throw CliError(kDecode, a.path + ": " + e.what());
    }
}

PublicKey load_pk(Artifact const &a, ParamSet const &ps)
{
    expect_kind(a, Kind::public_key);
    return decode_payload(a, [&](ByteView b) { return decode_public_key(b, ps); });
}

SecretKey load_sk(Artifact const &a, ParamSet const &ps, Role role)
{
    auto want = role == Role::original ? Kind::secret_key_original : Kind::secret_key_proxy;
    if (a.env.kind == Kind::secret_key_original || a.env.kind == Kind::secret_key_proxy)
        if (a.env.kind != want)
            throw CliError(kUsage, a.path + ": this command needs the "
                                       + std::string(kind_name(want)) + ", got the "
                                       + std::string(kind_name(a.env.kind)));
    expect_kind(a, want);
    return decode_payload(a, [&](ByteView b) { return decode_secret_key(b, role, ps); });
}

Warrant load_warrant(Artifact const &a, ParamSet const &ps)
{
    expect_kind(a, Kind::warrant);
    return decode_payload(a, [&](ByteView b) { return decode_warrant(b, ps); });
}

ProxySignature load_sig(Artifact const &a, ParamSet const &ps)
{
    expect_kind(a, Kind::proxy_signature);
    return decode_payload(a, [&](ByteView b) { return decode_signature(b, ps); });
}

void write_artifact(std::string const &path, Kind k, ParamSet const &ps, Bytes payload)
{
    spit(path, armor(Envelope::wrap(k, ps, std::move(payload))));
}

std::optional<std::string> board_path(std::string const &flag)
{
    if (!flag.empty())
        return flag;
    if (auto const *env = std::getenv(kBoardEnv); env && *env)
        return std::string(env);
    return std::nullopt;
}

std::string require_board(std::string const &flag)
{
    auto p = board_path(flag);
    if (!p)
        throw CliError(kUsage, std::string("no board given; pass --board or set ") + kBoardEnv);
    return *p;
}

BulletinBoard open_board(std::string const &path, ParamSet const &ps)
{
    try {
        return BulletinBoard::replay(path, ps);
    } catch (BoardError const &e) {
        throw CliError(kBoard, e.what());
    }
}

GenerationOptions gen_options()
{
    GenerationOptions g;
    g.threads = opt.threads;
    return g;
}

// Accept/reject verdict: one line on stdout and the exit code.
int verdict(bool ok, std::string const &what, std::string const &reason = {})
{
    if (opt.json) {
        json j{{"command", what}, {"result", ok ? "accept" : "reject"}};
        if (!ok && !reason.empty())
            j["reason"] = reason;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (ok ? "ACCEPT " : "REJECT ") << what;
        if (!ok && !reason.empty())
            std::cout << " (" << reason << ")";
        std::cout << "\n";
    }
    return ok ? kOk : kReject;
}

void report(json const &j, std::string const &text)
{
    if (opt.json)
        std::cout << j.dump() << "\n";
    else
        std::cout << text;
}

std::string fmt_bytes(double b)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << b << " B";
    return s.str();
}

// --- subcommands ---------------------------------------------------------

int cmd_params(bool config)
{
    auto ps = resolve_params(opt.params);
    if (config) {
        std::cout << paramset_to_config(ps) << "\n";
        return kOk;
    }
    auto sz = size_report(ps);
    json j{{"name", ps.name},
           {"n", ps.n},
           {"p_bits", mpz_sizeinbase(ps.p.get_mpz_t(), 2)},
           {"I0", ps.I0},
           {"I1", ps.I1},
           {"gamma0", ps.gamma0},
           {"gamma1", ps.gamma1},
           {"L0", ps.L0},
           {"L1", ps.L1},
           {"M1", ps.M1},
           {"M2", ps.M2},
           {"insecure", ps.insecure},
           {"pk_bytes", sz.pk_bytes()},
           {"sk_bytes", sz.sk_bytes()},
           {"share_bytes", sz.share_bytes()},
           {"signature_bytes", sz.signature_bytes()},
           {"batch_acceptance", batch_acceptance_probability(ps)}};
    std::ostringstream t;
    t << "parameter set   " << ps.name << (ps.insecure ? " (INSECURE)" : "") << "\n"
      << "prime           " << mpz_sizeinbase(ps.p.get_mpz_t(), 2) << " bits, n = " << ps.n << "\n"
      << "I0, I1          " << ps.I0 << ", " << ps.I1 << "\n"
      << "gamma0, gamma1  " << ps.gamma0 << ", " << ps.gamma1 << "\n"
      << "L0, L1          " << ps.L0 << ", " << ps.L1 << "\n"
      << "M1, M2          " << ps.M1 << ", " << ps.M2 << "\n"
      << "public key      " << fmt_bytes(sz.pk_bytes()) << "\n"
      << "secret key      " << fmt_bytes(sz.sk_bytes()) << "\n"
      << "proxy share     " << fmt_bytes(sz.share_bytes()) << "\n"
      << "signature       " << fmt_bytes(sz.signature_bytes()) << "\n"
      << "accept/attempt  " << batch_acceptance_probability(ps) << "\n";
    report(j, t.str());
    return kOk;
}

int cmd_keygen(std::string const &role_name, std::string const &pk_out, std::string const &sk_out)
{
    if (opt.params.empty())
        throw CliError(kUsage, "keygen needs --params");
    auto ps = resolve_params(opt.params);
    Role role = role_name == "proxy" ? Role::proxy : Role::original;
    auto rng = make_rng();
    if (ps.L0 > 4096)
        warn("generating " + std::to_string(ps.L0) + " curves; this takes a long time");
    auto kp = keygen(ps, role, rng, gen_options());
    write_artifact(pk_out, Kind::public_key, ps, encode_public_key(kp.pk, ps));
    write_artifact(sk_out, role == Role::original ? Kind::secret_key_original : Kind::secret_key_proxy,
                   ps, encode_secret_key(kp.sk, ps));
    report({{"command", "keygen"}, {"role", role_name}, {"public_key", pk_out}, {"secret_key", sk_out}},
           "wrote " + pk_out + " and " + sk_out + "\n");
    return kOk;
}

int cmd_delegate(std::string const &sk_path, std::string const &pk_path, std::string const &attribute,
                 std::string const &out, std::string const &board_flag, bool publish)
{
    auto ska = read_artifact(sk_path), pka = read_artifact(pk_path);
    auto ps = params_for({&pka, &ska});
    auto sk = load_sk(ska, ps, Role::original);
    auto pk = load_pk(pka, ps);
    auto rng = make_rng();
    Bytes d(attribute.begin(), attribute.end());
    GenerationStats st;
    auto z = proxy_share_generate(sk, pk, d, ps, rng, gen_options(), &st);
    uint64_t created = opt.seed ? 0 : static_cast<uint64_t>(std::time(nullptr));
    Warrant w{d, z, WarrantStatus::active, created};
    write_artifact(out, Kind::warrant, ps, encode_warrant(w, ps));
    auto id = warrant_id(w, ps);
    json j{{"command", "delegate"}, {"warrant", out}, {"id", id}, {"attempts", st.attempts}};
    std::string text = "wrote " + out + " (warrant " + id + ", " + std::to_string(st.attempts)
                       + " attempts)\n";
    if (publish) {
        auto path = require_board(board_flag);
        try {
            BulletinBoard board(ps, pk, path);
            board.publish(w);
        } catch (BoardError const &e) {
            throw CliError(kBoard, e.what());
        }
        j["board"] = path;
        text += "published to " + path + "\n";
    }
    report(j, text);
    return kOk;
}

int cmd_verify_share(std::string const &pk_path, std::string const &warrant_path)
{
    auto pka = read_artifact(pk_path), wa = read_artifact(warrant_path);
    auto ps = params_for({&pka, &wa});
    auto pk = load_pk(pka, ps);
    auto w = load_warrant(wa, ps);
    return verdict(proxy_share_verify(pk, w.d_B, w.share, ps), "verify-share");
}

int cmd_sign(std::string const &sk_path, std::string const &pk_path, std::string const &orig_path,
             std::string const &warrant_path, std::string const &message, std::string const &out)
{
    auto ska = read_artifact(sk_path), pkb = read_artifact(pk_path), pka = read_artifact(orig_path),
         wa = read_artifact(warrant_path);
    auto ps = params_for({&pkb, &ska, &pka, &wa});
    auto sk = load_sk(ska, ps, Role::proxy);
    auto pk_B = load_pk(pkb, ps);
    auto pk_A = load_pk(pka, ps);
    auto w = load_warrant(wa, ps);
    // an honest proxy never signs under a warrant that would not verify
    if (!proxy_share_verify(pk_A, w.d_B, w.share, ps))
        return verdict(false, "sign", "warrant does not verify under the original signer's key");
    auto m = slurp_bytes(message);
    auto rng = make_rng();
    GenerationStats st;
    auto sig = proxy_sign(m, sk, pk_B, w.d_B, w.share, ps, rng, gen_options(), &st);
    write_artifact(out, Kind::proxy_signature, ps, encode_signature(sig, ps));
    report({{"command", "sign"}, {"signature", out}, {"attempts", st.attempts}},
           "wrote " + out + " (" + std::to_string(st.attempts) + " attempts)\n");
    return kOk;
}

int cmd_verify(std::string const &orig_path, std::string const &proxy_path, std::string const &warrant_path,
               std::string const &message, std::string const &sig_path, std::string const &board_flag)
{
    auto pka = read_artifact(orig_path), pkb = read_artifact(proxy_path), wa = read_artifact(warrant_path),
         sa = read_artifact(sig_path);
    auto ps = params_for({&pka, &pkb, &wa, &sa});
    auto pk_A = load_pk(pka, ps);
    auto pk_B = load_pk(pkb, ps);
    auto w = load_warrant(wa, ps);
    auto sig = load_sig(sa, ps);
    auto m = slurp_bytes(message);

    if (auto path = board_path(board_flag)) {
        auto board = open_board(*path, ps);
        if (!(board.original_key() == pk_A))
            throw CliError(kBoard, *path + ": board belongs to a different original signer");
        auto id = warrant_id(w, ps);
        try {
            if (board.is_revoked(id))
                return verdict(false, "verify", "warrant " + id + " is revoked");
        } catch (NotFound const &) {
            return verdict(false, "verify", "warrant " + id + " is not on the board");
        }
    }
    return verdict(proxy_verify(m, sig, pk_A, pk_B, w.d_B, w.share, ps), "verify");
}

json warrant_json(std::string const &id, Warrant const &w)
{
    return {{"id", id},
            {"attribute", std::string(w.d_B.begin(), w.d_B.end())},
            {"status", w.status == WarrantStatus::active ? "active" : "revoked"},
            {"created", w.created}};
}

std::string warrant_line(std::string const &id, Warrant const &w)
{
    return id + "  " + (w.status == WarrantStatus::active ? "active " : "revoked") + "  "
           + std::to_string(w.created) + "  " + std::string(w.d_B.begin(), w.d_B.end()) + "\n";
}

int cmd_board_init(std::string const &board_flag, std::string const &pk_path)
{
    auto path = require_board(board_flag);
    if (std::filesystem::exists(path) && !opt.force)
        throw CliError(kBoard, path + " exists; pass --force to replace it");
    std::filesystem::remove(path);
    auto pka = read_artifact(pk_path);
    auto ps = params_for({&pka});
    try {
        BulletinBoard board(ps, load_pk(pka, ps), path);
    } catch (BoardError const &e) {
        throw CliError(kBoard, e.what());
    }
    report({{"command", "board init"}, {"board", path}}, "created " + path + "\n");
    return kOk;
}

// The board header names its parameter set; --params may override it.
ParamSet board_params(std::string const &path)
{
    if (!opt.params.empty())
        return resolve_params(opt.params);
    std::ifstream in(path);
    std::string magic, version, name;
    if (!(in >> magic >> version >> name))
        throw CliError(kBoard, path + ": not a board log");
    return resolve_params(name);
}

int cmd_board_publish(std::string const &board_flag, std::string const &warrant_path)
{
    auto path = require_board(board_flag);
    auto ps = board_params(path);
    auto wa = read_artifact(warrant_path);
    require_params(ps, {&wa});
    auto w = load_warrant(wa, ps);
    auto board = open_board(path, ps);
    std::string id;
    try {
        BulletinBoard live(ps, board.original_key(), path);
        id = live.publish(w);
    } catch (PublishRejected const &e) {
        return verdict(false, "publish", e.what());
    } catch (BoardError const &e) {
        throw CliError(kBoard, e.what());
    }
    report({{"command", "board publish"}, {"id", id}}, id + "\n");
    return kOk;
}

int cmd_board_lookup(std::string const &board_flag, std::string const &id, std::string const &attribute,
                     std::string const &out)
{
    auto path = require_board(board_flag);
    auto ps = board_params(path);
    auto board = open_board(path, ps);
    Warrant w;
    try {
        w = id.empty() ? board.lookup_attribute(as_bytes(attribute)) : board.lookup(id);
    } catch (NotFound const &e) {
        throw CliError(kBoard, e.what());
    }
    auto wid = warrant_id(w, ps);
    if (!out.empty())
        write_artifact(out, Kind::warrant, ps, encode_warrant(w, ps));
    report(warrant_json(wid, w), warrant_line(wid, w));
    return kOk;
}

int cmd_board_revoke(std::string const &board_flag, std::string const &id)
{
    auto path = require_board(board_flag);
    auto ps = board_params(path);
    auto board = open_board(path, ps);
    try {
        BulletinBoard live(ps, board.original_key(), path);
        live.revoke(id);
    } catch (NotFound const &e) {
        throw CliError(kBoard, e.what());
    } catch (BoardError const &e) {
        throw CliError(kBoard, e.what());
    }
    report({{"command", "board revoke"}, {"id", id}}, "revoked " + id + "\n");
    return kOk;
}

int cmd_board_list(std::string const &board_flag)
{
    auto path = require_board(board_flag);
    auto ps = board_params(path);
    auto board = open_board(path, ps);
    json arr = json::array();
    std::string text;
    for (auto const &[id, w] : board.snapshot()) {
        arr.push_back(warrant_json(id, w));
        text += warrant_line(id, w);
    }
    report({{"command", "board list"}, {"warrants", arr}}, text);
    return kOk;
}

int cmd_bench(uint64_t trials, bool with_retry, uint64_t per_action)
{
    auto ps = resolve_params(opt.params.empty() ? "csidh512-16-8-8-2" : opt.params);
    auto rng = make_rng();
    auto s = measure_action_cost(ps, trials, rng);
    // --per-action projects from a given count; timing still comes from the run
    CostModel cm{per_action ? per_action : static_cast<uint64_t>(std::llround(s.mean)),
                 with_retry ? 1.0 / batch_acceptance_probability(ps) : 1.0};
    auto rows = project_totals(cm, ps);

    json j{{"command", "bench"},
           {"params", ps.name},
           {"trials", s.trials},
           {"measured_mean_mults", s.mean},
           {"per_action_mults", cm.per_action_mults},
           {"min", s.min},
           {"max", s.max},
           {"per_action_seconds", s.mean_seconds},
           {"phases", json::array()}};
    std::ostringstream t;
    t << "group action on " << ps.name << ": " << s.trials << " trials, mean "
      << std::llround(s.mean) << " mults (min " << s.min << ", max " << s.max << "), "
      << std::setprecision(4) << s.mean_seconds << " s\n";
    if (per_action)
        t << "projecting with " << per_action << " mults per action\n";
    t << "\n";
    t << std::left << std::setw(30) << "phase" << std::right << std::setw(10) << "actions"
      << std::setw(14) << "time (s)" << std::setw(22) << "multiplications" << "\n";
    for (auto const &r : rows) {
        double secs = s.mean_seconds * static_cast<double>(r.actions) * r.retry;
        j["phases"].push_back({{"phase", phase_name(r.phase)},
                               {"actions", r.actions},
                               {"retry", r.retry},
                               {"seconds", secs},
                               {"mults", r.mults}});
        t << std::left << std::setw(30) << phase_name(r.phase) << std::right << std::setw(10)
          << r.actions << std::setw(14) << std::fixed << std::setprecision(2) << secs
          << std::setw(22) << r.mults << "\n";
    }
    report(j, t.str());
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Isogeny-based proxy signatures: keys, warrants, signatures and the warrant board"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("-p,--params", opt.params, "Parameter set: toy, toy-wide or csidh512-G0-G1-M1-M2");
    app.add_flag("--insecure", opt.insecure, "Allow toy parameter sets");
    app.add_option("--seed", opt.seed, "Deterministic randomness (testing only)");
    app.add_flag("--json", opt.json, "Machine-readable output");
    app.add_flag("-f,--force", opt.force, "Overwrite existing output files");
    app.add_option("-j,--threads", opt.threads, "Worker threads for key generation (0 = all cores)");

    std::function<int()> run;

    auto *params = app.add_subcommand("params", "Show a parameter set and its artifact sizes");
    bool config = false;
    params->add_flag("--config", config, "Print the JSON config document instead");
    params->callback([&] {
        if (opt.params.empty())
            opt.params = "csidh512-16-8-8-2";
        run = [&] { return cmd_params(config); };
    });

    auto *kg = app.add_subcommand("keygen", "Generate a key pair");
    std::string role = "original", pk_out, sk_out;
    kg->add_option("--role", role)->check(CLI::IsMember({"original", "proxy"}));
    kg->add_option("--pk", pk_out, "Public key output")->required();
    kg->add_option("--sk", sk_out, "Secret key output")->required();
    kg->callback([&] { run = [&] { return cmd_keygen(role, pk_out, sk_out); }; });

    auto *dl = app.add_subcommand("delegate", "Issue a warrant (proxy share) for an attribute");
    std::string sk_in, pk_in, attribute, out, board;
    bool publish = false;
    dl->add_option("--sk", sk_in, "Original signer's secret key")->required();
    dl->add_option("--pk", pk_in, "Original signer's public key")->required();
    dl->add_option("--attribute", attribute, "Proxy attribute d_B")->required();
    dl->add_option("-o,--out", out, "Warrant output")->required();
    dl->add_flag("--publish", publish, "Also publish the warrant to the board");
    dl->add_option("--board", board, std::string("Board log (default $") + kBoardEnv + ")");
    dl->callback([&] { run = [&] { return cmd_delegate(sk_in, pk_in, attribute, out, board, publish); }; });

    auto *vs = app.add_subcommand("verify-share", "Check a warrant against the original signer's key");
    std::string warrant_in;
    vs->add_option("--pk", pk_in, "Original signer's public key")->required();
    vs->add_option("--warrant", warrant_in)->required();
    vs->callback([&] { run = [&] { return cmd_verify_share(pk_in, warrant_in); }; });

    auto *sg = app.add_subcommand("sign", "Produce a proxy signature on a message");
    std::string orig_in, msg_in;
    sg->add_option("--sk", sk_in, "Proxy signer's secret key")->required();
    sg->add_option("--pk", pk_in, "Proxy signer's public key")->required();
    sg->add_option("--original-pk", orig_in, "Original signer's public key")->required();
    sg->add_option("--warrant", warrant_in)->required();
    sg->add_option("-m,--message", msg_in, "Message file")->required();
    sg->add_option("-o,--out", out, "Signature output")->required();
    sg->callback([&] { run = [&] { return cmd_sign(sk_in, pk_in, orig_in, warrant_in, msg_in, out); }; });

    auto *vf = app.add_subcommand("verify", "Verify a proxy signature");
    std::string proxy_in, sig_in;
    vf->add_option("--original-pk", orig_in)->required();
    vf->add_option("--proxy-pk", proxy_in)->required();
    vf->add_option("--warrant", warrant_in)->required();
    vf->add_option("-m,--message", msg_in)->required();
    vf->add_option("-s,--signature", sig_in)->required();
    vf->add_option("--board", board, std::string("Also require the warrant to be active on this board (default $")
                                         + kBoardEnv + ")");
    vf->callback([&] { run = [&] { return cmd_verify(orig_in, proxy_in, warrant_in, msg_in, sig_in, board); }; });

    auto *bd = app.add_subcommand("board", "Manage the warrant board");
    bd->require_subcommand(1);
    bd->fallthrough();
    bd->add_option("--board", board, std::string("Board log (default $") + kBoardEnv + ")");
    auto *bi = bd->add_subcommand("init", "Create a board for an original signer");
    bi->add_option("--pk", pk_in, "Original signer's public key")->required();
    bi->callback([&] { run = [&] { return cmd_board_init(board, pk_in); }; });
    auto *bp = bd->add_subcommand("publish", "Verify and publish a warrant");
    bp->add_option("--warrant", warrant_in)->required();
    bp->callback([&] { run = [&] { return cmd_board_publish(board, warrant_in); }; });
    auto *bl = bd->add_subcommand("lookup", "Find a warrant by id or attribute");
    std::string id;
    auto *id_opt = bl->add_option("--id", id);
    bl->add_option("--attribute", attribute)->excludes(id_opt);
    bl->add_option("-o,--out", out, "Write the warrant artifact here");
    bl->callback([&] {
        if (id.empty() && attribute.empty())
            throw CLI::ValidationError("lookup", "pass --id or --attribute");
        run = [&] { return cmd_board_lookup(board, id, attribute, out); };
    });
    auto *br = bd->add_subcommand("revoke", "Revoke a warrant");
    br->add_option("--id", id)->required();
    br->callback([&] { run = [&] { return cmd_board_revoke(board, id); }; });
    auto *bls = bd->add_subcommand("list", "List every warrant");
    bls->callback([&] { run = [&] { return cmd_board_list(board); }; });

    auto *bn = app.add_subcommand("bench", "Measure the group action and project per-phase costs");
    uint64_t trials = 3;
    bool with_retry = false;
    bn->add_option("-n,--trials", trials)->check(CLI::PositiveNumber);
    bn->add_flag("--with-retry", with_retry, "Scale generation phases by the expected attempts");
    uint64_t per_action = 0;
    bn->add_option("--per-action", per_action, "Project totals from this per-action count instead");
    bn->callback([&] { run = [&] { return cmd_bench(trials, with_retry, per_action); }; });

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const &e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const &e) {
        return app.exit(e);
    } catch (CLI::ParseError const &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return run();
    } catch (CliError const &e) {
        std::cerr << "csips: error: " << e.what() << "\n";
        return e.code;
    } catch (DecodeError const &e) {
        std::cerr << "csips: decode error: " << e.what() << "\n";
        return kDecode;
    } catch (BoardError const &e) {
        std::cerr << "csips: board error: " << e.what() << "\n";
        return kBoard;
    } catch (std::exception const &e) {
        std::cerr << "csips: error: " << e.what() << "\n";
        return kError;
    }
}
