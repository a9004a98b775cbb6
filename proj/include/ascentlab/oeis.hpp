#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"

namespace ascentlab {

// An OEIS identifier: "A" followed by exactly six digits.
class OeisId {
  public:
    explicit OeisId(std::string id);
    static OeisId from_number(long number);

    const std::string& str() const { return id_; }
    auto operator<=>(const OeisId&) const = default;

  private:
    std::string id_;
};

// A bundled snapshot of one sequence: enough terms to disambiguate desk-scale
// queries. These are test fixtures with provenance notes, not authoritative
// OEIS mirrors.
struct BundledEntry {
    OeisId id;
    std::vector<Count> terms;
    std::string note;
};

// The twelve sequences cited by the summary table (plus the Fishburn
// numbers).
const std::vector<BundledEntry>& bundled_entries();

// All bundled ids whose term list contains series.values as a contiguous run
// (offset-agnostic, because OEIS offsets differ from this toolkit's n >= 1
// convention). Requires at least 5 terms; throws TooFewTermsError otherwise.
std::vector<OeisId> lookup_local(const CountSeries& series);

struct RemoteOptions {
    bool offline = false;
    // Cache directory; empty resolves ASCENTLAB_OEIS_CACHE, then
    // $XDG_CACHE_HOME/ascentlab/oeis, then ~/.cache/ascentlab/oeis.
    std::string cache_dir;
    int timeout_seconds = 10;
};

std::filesystem::path resolve_cache_dir(const RemoteOptions& options = {});

// Ids from the OEIS search API for the comma-joined terms, disk-cached per
// query (atomic write-temp-then-rename; a warm cache replays byte-identical
// responses without touching the network). Throws OfflineModeError before
// any I/O when options.offline is set, NetworkUnavailableError when the
// fetch fails (callers typically fall back to lookup_local), and
// MalformedResponseError when a response cannot be parsed.
std::vector<OeisId> lookup_remote(const CountSeries& series,
                                  const RemoteOptions& options = {});

}  // namespace ascentlab
