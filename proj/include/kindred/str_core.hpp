#ifndef KINDRED_STR_CORE_HPP
#define KINDRED_STR_CORE_HPP

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kindred {

// A named STR locus with its repeat motif (2-6 bases over {A,C,G,T}).
struct Marker {
    std::string name;
    std::string motif;

    auto operator<=>(const Marker&) const = default;
};

void validate_motif(std::string_view motif);

// Repeat count plus an optional microvariant suffix: "16.2" is 16 full
// repeats followed by the first 2 bases of the motif.
struct Allele {
    int full_repeats = 0;
    int partial_bases = 0;

    auto operator<=>(const Allele&) const = default;

    std::string display() const;
    static Allele parse(std::string_view text);
};

// Unordered pair of alleles at one locus; (a,b) == (b,a).
struct GenotypePair {
    Allele first;
    Allele second;

    GenotypePair() = default;
    GenotypePair(Allele a, Allele b);

    auto operator<=>(const GenotypePair&) const = default;

    bool contains(const Allele& a) const { return a == first || a == second; }
    bool shares_allele(const GenotypePair& other) const {
        return other.contains(first) || other.contains(second);
    }
};

struct ProfileEntry {
    Marker marker;
    GenotypePair pair;
};

// Ordered list of marker entries. Panel order is preserved (it fixes the
// key-preimage concatenation order); canonical serialization sorts by name.
class StrProfile {
public:
    StrProfile() = default;

    void add(Marker marker, GenotypePair pair);
    const ProfileEntry* find(std::string_view marker_name) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<ProfileEntry>& entries() const { return entries_; }

    std::set<std::string> marker_names() const;

private:
    std::vector<ProfileEntry> entries_;
};

std::string expand_allele(std::string_view motif, const Allele& allele);

struct PaternityResult {
    std::map<std::string, bool> per_marker;
    bool overall = false;
};

// Obligate-allele consistency: per marker, the child's pair must share at
// least one allele with the parent's pair.
PaternityResult paternity_consistent(const StrProfile& child, const StrProfile& parent);

std::set<GenotypePair> possible_children(const GenotypePair& mother, const GenotypePair& father);

StrProfile parse_profile(const std::string& text);
std::string serialize_profile(const StrProfile& profile);  // canonical: markers sorted by name

// The 16-locus default panel: the ten loci the scheme names plus six
// further CODIS loci to fill the panel.
StrProfile default_panel_template();
std::vector<Marker> default_panel();

}  // namespace kindred

#endif
