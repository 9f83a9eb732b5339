#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "locmerge/errors.hpp"
#include "locmerge/iso_tables.hpp"

// Domain types shared across the toolkit, plus URL decomposition into
// host / registrable domain / TLD.

namespace locmerge {

namespace detail {

inline bool is_ascii_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string ascii_lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

inline bool is_two_letter(std::string_view s) {
    return s.size() == 2 && is_ascii_letter(s[0]) && is_ascii_letter(s[1]);
}

} // namespace detail

// Two-letter lowercase country code. Shape (2 ASCII letters) is enforced at
// construction; ISO 3166-1 membership is a separate query.
class CountryCode {
public:
    explicit CountryCode(std::string_view code) {
        if (!detail::is_two_letter(code))
            throw std::invalid_argument("country code must be 2 ASCII letters: \"" +
                                        std::string(code) + "\"");
        value_ = detail::ascii_lower_copy(code);
    }

    static std::optional<CountryCode> try_make(std::string_view code) {
        if (!detail::is_two_letter(code)) return std::nullopt;
        return CountryCode(code);
    }

    const std::string& value() const { return value_; }
    bool iso_assigned() const { return iso::is_country(value_); }

    friend bool operator==(const CountryCode&, const CountryCode&) = default;
    friend auto operator<=>(const CountryCode&, const CountryCode&) = default;

private:
    std::string value_;
};

// Two-letter lowercase language code (ISO 639-1 membership checkable).
class LanguageCode {
public:
    explicit LanguageCode(std::string_view code) {
        if (!detail::is_two_letter(code))
            throw std::invalid_argument("language code must be 2 ASCII letters: \"" +
                                        std::string(code) + "\"");
        value_ = detail::ascii_lower_copy(code);
    }

    static std::optional<LanguageCode> try_make(std::string_view code) {
        if (!detail::is_two_letter(code)) return std::nullopt;
        return LanguageCode(code);
    }

    const std::string& value() const { return value_; }
    bool iso_assigned() const { return iso::is_language(value_); }

    friend bool operator==(const LanguageCode&, const LanguageCode&) = default;
    friend auto operator<=>(const LanguageCode&, const LanguageCode&) = default;

private:
    std::string value_;
};

// A (country, language) pair, e.g. de-de.
struct Locale {
    CountryCode country;
    LanguageCode language;

    std::string to_string() const { return country.value() + "-" + language.value(); }

    static std::optional<Locale> try_parse(std::string_view text) {
        auto dash = text.find('-');
        if (dash == std::string_view::npos) return std::nullopt;
        auto c = CountryCode::try_make(text.substr(0, dash));
        auto l = LanguageCode::try_make(text.substr(dash + 1));
        if (!c || !l) return std::nullopt;
        return Locale{*c, *l};
    }

    friend bool operator==(const Locale&, const Locale&) = default;
    friend auto operator<=>(const Locale&, const Locale&) = default;
};

// One search result. `rank` is the provider order (0 = top). The optional
// publisher country and language are upstream-inferred metadata, absent when
// the provider gave no signal.
struct Source {
    std::string url;
    std::string title;
    std::string snippet;
    int rank = 0;
    std::optional<CountryCode> publisher_country;
    std::optional<LanguageCode> language;
};

struct UrlParts {
    std::string host;               // lowercased, www. retained
    std::string registrable_domain; // never starts with "www."
    std::string tld;                // final label of host
};

// TLDs carrying no geographic signal.
struct GenericTldSet {
    std::unordered_set<std::string> members;

    static GenericTldSet defaults() {
        return {{"com", "org", "net", "edu", "gov", "io", "ai", "app", "dev", "co"}};
    }

    bool contains(std::string_view tld) const {
        return members.contains(std::string(tld));
    }
};

// Multi-label public suffixes recognized during registrable-domain
// extraction. Deliberately a small bounded table, not the full PSL.
struct MultiLabelSuffixSet {
    std::set<std::string> members;

    static MultiLabelSuffixSet defaults() {
        return {{"co.uk", "com.tr", "com.au", "co.jp", "ac.uk"}};
    }

    bool contains(std::string_view suffix) const {
        return members.contains(std::string(suffix));
    }
};

namespace detail {

inline bool is_host_char(unsigned char c) {
    if (c >= 0x80) return true; // IDN bytes accepted as-is
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
}

// Extracts the host from a URL-ish string: strips scheme, userinfo, port,
// path, query and fragment. Throws MalformedUrl if nothing plausible remains.
inline std::string extract_host(std::string_view url) {
    std::string_view rest = url;

    if (auto pos = rest.find("://"); pos != std::string_view::npos) {
        rest = rest.substr(pos + 3);
    } else if (rest.starts_with("//")) {
        rest = rest.substr(2);
    }

    // cut authority at the first path/query/fragment delimiter
    if (auto cut = rest.find_first_of("/?#"); cut != std::string_view::npos)
        rest = rest.substr(0, cut);

    // userinfo
    if (auto at = rest.rfind('@'); at != std::string_view::npos)
        rest = rest.substr(at + 1);

    // port (digits after the last colon)
    if (auto colon = rest.rfind(':'); colon != std::string_view::npos) {
        std::string_view tail = rest.substr(colon + 1);
        bool digits = !tail.empty() &&
                      std::all_of(tail.begin(), tail.end(),
                                  [](unsigned char c) { return std::isdigit(c); });
        if (!digits) throw MalformedUrlError(std::string(url));
        rest = rest.substr(0, colon);
    }

    std::string host = ascii_lower_copy(rest);
    if (!host.empty() && host.back() == '.') host.pop_back(); // trailing FQDN dot

    if (host.empty()) throw MalformedUrlError(std::string(url));
    for (unsigned char c : host)
        if (!is_host_char(c)) throw MalformedUrlError(std::string(url));

    // no empty labels
    if (host.front() == '.' || host.find("..") != std::string::npos)
        throw MalformedUrlError(std::string(url));

    return host;
}

inline std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (true) {
        auto dot = host.find('.', start);
        if (dot == std::string_view::npos) {
            labels.push_back(host.substr(start));
            break;
        }
        labels.push_back(host.substr(start, dot - start));
        start = dot + 1;
    }
    return labels;
}

} // namespace detail

inline UrlParts parse_url_parts(std::string_view url,
                                const MultiLabelSuffixSet& suffixes =
                                    MultiLabelSuffixSet::defaults()) {
    if (url.empty()) throw MalformedUrlError("");

    UrlParts parts;
    parts.host = detail::extract_host(url);

    // registrable domain is computed on the host with a leading www. stripped
    std::string_view dhost = parts.host;
    if (dhost.starts_with("www.") && dhost.size() > 4) dhost = dhost.substr(4);

    auto labels = detail::split_labels(dhost);
    parts.tld = std::string(labels.back());

    if (labels.size() < 2) {
        parts.registrable_domain = std::string(dhost);
        return parts;
    }

    std::string last_two = std::string(labels[labels.size() - 2]) + "." +
                           std::string(labels.back());
    if (labels.size() >= 3 && suffixes.contains(last_two)) {
        parts.registrable_domain =
            std::string(labels[labels.size() - 3]) + "." + last_two;
    } else {
        parts.registrable_domain = last_two;
    }
    return parts;
}

inline std::string domain_of(const Source& source) {
    return parse_url_parts(source.url).registrable_domain;
}

} // namespace locmerge
