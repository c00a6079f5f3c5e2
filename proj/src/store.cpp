#include "csips/store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace csips {

namespace {

constexpr char const *kMagic = "CSPS-BOARD";
constexpr int kLogVersion = 1;

} // namespace

BulletinBoard::BulletinBoard(ParamSet ps, PublicKey original, std::optional<std::filesystem::path> log)
    : _ps(std::move(ps)), _pk(std::move(original)), _log(std::move(log))
{
    if (_pk.curves.size() != _ps.L0)
        throw std::invalid_argument("board key does not match the parameter set");
    if (!_log)
        return;
    if (std::filesystem::exists(*_log) && std::filesystem::file_size(*_log) > 0) {
        auto expected = _pk;
        load(*_log);
        if (!(expected == _pk))
            throw BoardError("board log belongs to a different original signer");
    } else {
        std::ofstream out(*_log, std::ios::trunc);
        if (!out)
            throw BoardError("cannot create board log " + _log->string());
        out << header();
        if (!out.flush())
            throw BoardError("cannot write board log " + _log->string());
    }
}

BulletinBoard::BulletinBoard(ParamSet ps, std::filesystem::path const &log, TrustedReplay)
    : _ps(std::move(ps))
{
    load(log);
}

BulletinBoard BulletinBoard::replay(std::filesystem::path const &log, ParamSet const &ps)
{
    return BulletinBoard(ps, log, TrustedReplay{});
}

std::string BulletinBoard::header() const
{
    std::ostringstream h;
    h << kMagic << " " << kLogVersion << " " << _ps.name << " " << to_hex(paramset_fingerprint(_ps))
      << "\nKEY " << to_hex(encode_public_key(_pk, _ps)) << "\n";
    return h.str();
}

void BulletinBoard::load(std::filesystem::path const &log)
{
    std::ifstream in(log);
    if (!in)
        throw BoardError("cannot open board log " + log.string());
    std::string line;
    size_t lineno = 0;
    auto fail = [&](std::string const &why) {
        throw BoardError(log.string() + ":" + std::to_string(lineno) + ": " + why);
    };

    if (!std::getline(in, line))
        fail("empty log");
    ++lineno;
    {
        std::istringstream h(line);
        std::string magic, name, fp;
        int version = 0;
        h >> magic >> version >> name >> fp;
        if (magic != kMagic || version != kLogVersion)
            fail("not a board log");
        if (name != _ps.name || fp != to_hex(paramset_fingerprint(_ps)))
            fail("log was written for parameter set '" + name + "'");
    }
    if (!std::getline(in, line) || line.rfind("KEY ", 0) != 0)
        fail("missing KEY record");
    ++lineno;
    try {
        _pk = decode_public_key(from_hex(line.substr(4)), _ps);
    } catch (std::exception const &e) {
        fail(std::string("bad KEY record: ") + e.what());
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream rec(line);
        std::string op, id, hex;
        rec >> op >> id;
        if (op == "PUBLISH") {
            rec >> hex;
            Warrant w;
            try {
                w = decode_warrant(from_hex(hex), _ps);
            } catch (std::exception const &e) {
                fail(std::string("bad warrant: ") + e.what());
            }
            if (warrant_id(w, _ps) != id)
                fail("warrant id does not match its content");
            apply_publish(id, std::move(w));
        } else if (op == "REVOKE") {
            auto it = _entries.find(id);
            if (it == _entries.end())
                fail("revocation of unknown warrant " + id);
            it->second.status = WarrantStatus::revoked;
        } else {
            fail("unknown record '" + op + "'");
        }
    }
}

void BulletinBoard::append_line(std::string const &line)
{
    if (!_log)
        return;
    std::ofstream out(*_log, std::ios::app);
    out << line << "\n";
    if (!out.flush())
        throw BoardError("cannot append to board log " + _log->string());
}

void BulletinBoard::apply_publish(std::string const &id, Warrant w)
{
    if (_entries.count(id))
        return;
    _entries.emplace(id, std::move(w));
    _order.push_back(id);
}

std::string BulletinBoard::publish(Warrant const &w)
{
    if (!proxy_share_verify(_pk, w.d_B, w.share, _ps))
        throw PublishRejected("proxy share does not verify under the original signer's key");
    Warrant stored = w;
    stored.status = WarrantStatus::active;
    auto id = warrant_id(stored, _ps);

    std::unique_lock g(_lock);
    if (_entries.count(id))
        return id;
    append_line("PUBLISH " + id + " " + to_hex(encode_warrant(stored, _ps)));
    apply_publish(id, std::move(stored));
    return id;
}

Warrant BulletinBoard::lookup(std::string const &id) const
{
    std::shared_lock g(_lock);
    auto it = _entries.find(id);
    if (it == _entries.end())
        throw NotFound("no warrant with id " + id);
    return it->second;
}

Warrant BulletinBoard::lookup_attribute(ByteView d_B) const
{
    std::shared_lock g(_lock);
    for (auto it = _order.rbegin(); it != _order.rend(); ++it) {
        auto const &w = _entries.at(*it);
        if (w.status == WarrantStatus::active && std::equal(w.d_B.begin(), w.d_B.end(), d_B.begin(), d_B.end()))
            return w;
    }
    throw NotFound("no active warrant for the given attribute");
}

bool BulletinBoard::is_revoked(std::string const &id) const
{
    return lookup(id).status == WarrantStatus::revoked;
}

void BulletinBoard::revoke(std::string const &id)
{
    std::unique_lock g(_lock);
    auto it = _entries.find(id);
    if (it == _entries.end())
        throw NotFound("no warrant with id " + id);
    if (it->second.status == WarrantStatus::revoked)
        return;
    append_line("REVOKE " + id);
    it->second.status = WarrantStatus::revoked;
}

std::vector<std::pair<std::string, Warrant>> BulletinBoard::snapshot() const
{
    std::shared_lock g(_lock);
    std::vector<std::pair<std::string, Warrant>> out;
    out.reserve(_order.size());
    for (auto const &id : _order)
        out.emplace_back(id, _entries.at(id));
    return out;
}

size_t BulletinBoard::size() const
{
    std::shared_lock g(_lock);
    return _entries.size();
}

}
