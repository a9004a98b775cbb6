#include "ascentlab/oeis.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifdef ASCENTLAB_HAVE_OPENSSL
#include <httplib.h>
#endif

namespace ascentlab {

// --- OeisId -----------------------------------------------------------------

OeisId::OeisId(std::string id) : id_(std::move(id)) {
    bool ok = id_.size() == 7 && id_[0] == 'A' &&
              std::all_of(id_.begin() + 1, id_.end(), [](char c) {
                  return std::isdigit(static_cast<unsigned char>(c));
              });
    if (!ok)
        throw Error("not an OEIS id (want A followed by six digits): " + id_);
}

OeisId OeisId::from_number(long number) {
    if (number < 0 || number > 999999)
        throw Error("OEIS number out of range: " + std::to_string(number));
    char buf[8];
    std::snprintf(buf, sizeof buf, "A%06ld", number);
    return OeisId(buf);
}

// --- bundled snapshot -------------------------------------------------------

namespace {

BundledEntry make_entry(const char* id, std::initializer_list<long long> terms,
                        const char* note) {
    BundledEntry e{OeisId(id), {}, note};
    for (long long t : terms) e.terms.emplace_back(Count(static_cast<long>(t)));
    return e;
}

}  // namespace

const std::vector<BundledEntry>& bundled_entries() {
    static const std::vector<BundledEntry> entries = {
        make_entry("A000108",
                   {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786,
                    208012, 742900, 2674440, 9694845},
                   "Catalan numbers C(2n,n)/(n+1), offset 0"),
        make_entry("A007051",
                   {1, 2, 5, 14, 41, 122, 365, 1094, 3281, 9842, 29525, 88574,
                    265721, 797162},
                   "(3^n+1)/2, offset 0"),
        make_entry("A001519",
                   {1, 1, 2, 5, 13, 34, 89, 233, 610, 1597, 4181, 10946,
                    28657, 75025, 196418},
                   "odd-indexed Fibonacci numbers F(2n-1), offset 0"),
        make_entry("A005183",
                   {1, 2, 5, 13, 33, 81, 193, 449, 1025, 2305, 5121, 11265,
                    24577, 53249},
                   "n*2^(n-1)+1, offset 0"),
        make_entry("A116703",
                   {1, 1, 2, 5, 13, 33, 82, 202, 497, 1224, 3017, 7439, 18343,
                    45228, 111514},
                   "terms generated from (1-x)^3/(1-4x+5x^2-3x^3)"),
        make_entry("A116702",
                   {1, 2, 5, 13, 32, 74, 163, 347, 722, 1480, 3005, 6065,
                    12196, 24470},
                   "terms generated from (3*2^n-n^2-n-2)/2, n >= 1"),
        make_entry("A000325",
                   {1, 1, 2, 5, 12, 27, 58, 121, 248, 503, 1014, 2037, 4084,
                    8179, 16370},
                   "2^n-n, offset 0"),
        make_entry("A116722",
                   {1, 2, 5, 12, 25, 47, 82, 135, 212, 320, 467, 662, 915,
                    1237},
                   "terms generated from (n^4-6n^3+47n^2-114n+120)/24, n >= 2, "
                   "with the conventional leading 1"),
        make_entry("A116725",
                   {1, 2, 5, 12, 26, 52, 99, 184, 340, 632, 1189, 2268, 4382,
                    8556},
                   "terms generated from 2^(n-1)+C(n,3), n >= 1"),
        make_entry("A050407",
                   {1, 1, 1, 2, 5, 11, 21, 36, 57, 85, 121, 166, 221, 287,
                    365},
                   "terms generated from n(n^2-6n+11)/6, offset 1"),
        make_entry("A002522",
                   {1, 2, 5, 10, 17, 26, 37, 50, 65, 82, 101, 122, 145, 170},
                   "n^2+1, offset 0"),
        make_entry("A022493",
                   {1, 1, 2, 5, 15, 53, 217, 1014, 5335, 31240, 201608,
                    1422074, 10886503},
                   "Fishburn numbers, offset 0"),
    };
    return entries;
}

// --- local lookup -----------------------------------------------------------

namespace {

void require_terms(const CountSeries& series) {
    if (series.values.size() < 5)
        throw TooFewTermsError("lookup needs at least 5 terms, got " +
                               std::to_string(series.values.size()));
}

bool contiguous_match(const std::vector<Count>& haystack,
                      const std::vector<Count>& needle) {
    if (needle.empty() || needle.size() > haystack.size()) return false;
    for (std::size_t start = 0; start + needle.size() <= haystack.size();
         ++start) {
        bool hit = true;
        for (std::size_t i = 0; i < needle.size() && hit; ++i)
            hit = haystack[start + i] == needle[i];
        if (hit) return true;
    }
    return false;
}

}  // namespace

std::vector<OeisId> lookup_local(const CountSeries& series) {
    require_terms(series);
    std::vector<OeisId> out;
    for (const BundledEntry& e : bundled_entries())
        if (contiguous_match(e.terms, series.values)) out.push_back(e.id);
    return out;
}

// --- remote lookup with disk cache ------------------------------------------

std::filesystem::path resolve_cache_dir(const RemoteOptions& options) {
    if (!options.cache_dir.empty()) return options.cache_dir;
    if (const char* env = std::getenv("ASCENTLAB_OEIS_CACHE"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "ascentlab" / "oeis";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "ascentlab" / "oeis";
    return std::filesystem::temp_directory_path() / "ascentlab" / "oeis";
}

namespace {

std::string series_query(const CountSeries& series) {
    std::string q;
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (i) q += ',';
        q += series.values[i].get_str();
    }
    return q;
}

// Extract ids from an OEIS search API JSON body.
std::vector<OeisId> parse_search_body(const std::string& body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedResponseError(std::string("OEIS response is not JSON: ") +
                                     e.what());
    }
    // The API returns either {"results": [...]} or a bare array; entries
    // carry a "number" field.
    const nlohmann::json* results = nullptr;
    if (doc.is_object() && doc.contains("results") &&
        doc["results"].is_array())
        results = &doc["results"];
    else if (doc.is_array())
        results = &doc;
    else if (doc.is_object() && doc.contains("results") &&
             doc["results"].is_null())
        return {};  // explicit empty result set
    else
        throw MalformedResponseError("OEIS response has no results array");
    std::vector<OeisId> out;
    for (const auto& item : *results) {
        if (!item.is_object() || !item.contains("number") ||
            !item["number"].is_number_integer())
            throw MalformedResponseError("OEIS result entry has no number");
        out.push_back(OeisId::from_number(item["number"].get<long>()));
    }
    return out;
}

std::filesystem::path cache_file_for(const std::filesystem::path& dir,
                                     const std::string& query) {
    return dir / ("q_" + query + ".json");  // digits and commas: path-safe
}

std::string fetch_remote(const std::string& query, int timeout_seconds) {
#ifdef ASCENTLAB_HAVE_OPENSSL
    try {
        httplib::SSLClient client("oeis.org", 443);
        client.set_connection_timeout(timeout_seconds);
        client.set_read_timeout(timeout_seconds);
        client.set_follow_location(true);
        auto res = client.Get("/search?q=" + query + "&fmt=json");
        if (!res)
            throw NetworkUnavailableError(
                "OEIS request failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw NetworkUnavailableError("OEIS request returned HTTP " +
                                          std::to_string(res->status));
        return res->body;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw NetworkUnavailableError(std::string("OEIS request failed: ") +
                                      e.what());
    }
#else
    (void)query;
    (void)timeout_seconds;
    throw NetworkUnavailableError(
        "this build has no TLS support; only cached queries are available");
#endif
}

}  // namespace

std::vector<OeisId> lookup_remote(const CountSeries& series,
                                  const RemoteOptions& options) {
    if (options.offline) throw OfflineModeError();
    require_terms(series);
    const std::string query = series_query(series);
    const std::filesystem::path dir = resolve_cache_dir(options);
    const std::filesystem::path file = cache_file_for(dir, query);

    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::ostringstream buf;
        buf << in.rdbuf();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::exception&) {
            throw MalformedResponseError("corrupt cache file: " +
                                         file.string());
        }
        if (!doc.is_object() || !doc.contains("body") ||
            !doc["body"].is_string())
            throw MalformedResponseError("corrupt cache file: " +
                                         file.string());
        return parse_search_body(doc["body"].get<std::string>());
    }

    const std::string body = fetch_remote(query, options.timeout_seconds);
    std::vector<OeisId> ids = parse_search_body(body);  // validate pre-cache

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nlohmann::json record;
    record["query"] = query;
    auto now = std::chrono::system_clock::now();
    record["fetched_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            now.time_since_epoch())
            .count();
    record["body"] = body;
    // Atomic publish: concurrent fetches of one query race benignly,
    // last-writer-wins.
    std::filesystem::path tmp = file;
    tmp += ".tmp." + std::to_string(
                         std::hash<std::string>{}(query) ^
                         static_cast<std::size_t>(
                             now.time_since_epoch().count()));
    {
        std::ofstream out(tmp);
        out << record.dump();
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    return ids;
}

}  // namespace ascentlab
