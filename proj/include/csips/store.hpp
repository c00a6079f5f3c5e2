#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "csips/scheme.hpp"

namespace csips {

class NotFound : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Publish refused: the share does not verify under the board's key.
class PublishRejected : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

class BoardError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Registry of warrants issued under one original signer's public key.
/// With a log path every mutation is appended to the file before it
/// becomes visible; opening an existing log replays it.
class BulletinBoard
{
    public:
        BulletinBoard(ParamSet ps, PublicKey original, std::optional<std::filesystem::path> log = {});

        /// Verifies the share, stores the warrant as active and returns its
        /// id. Publishing the same content again returns the same id.
        std::string publish(Warrant const &w);

        Warrant lookup(std::string const &id) const;
        /// Most recently published active warrant for d_B.
        Warrant lookup_attribute(ByteView d_B) const;
        bool is_revoked(std::string const &id) const;

        /// Monotone: revoking twice is a no-op.
        void revoke(std::string const &id);

        std::vector<std::pair<std::string, Warrant>> snapshot() const;
        size_t size() const;

        ParamSet const &params() const { return _ps; }
        PublicKey const &original_key() const { return _pk; }

        /// Rebuilds the entry map from a log file alone.
        static BulletinBoard replay(std::filesystem::path const &log, ParamSet const &ps);

    private:
        struct TrustedReplay {};
        BulletinBoard(ParamSet ps, std::filesystem::path const &log, TrustedReplay);

        void load(std::filesystem::path const &log);
        void append_line(std::string const &line);
        void apply_publish(std::string const &id, Warrant w);
        std::string header() const;

        ParamSet _ps;
        PublicKey _pk;
        std::optional<std::filesystem::path> _log;
        mutable std::shared_mutex _lock;
        std::unordered_map<std::string, Warrant> _entries;
        std::vector<std::string> _order;
};

}
