#include "kindred/str_core.hpp"

#include <algorithm>
#include <charconv>

#include "json.hpp"
#include "kindred/errors.hpp"

namespace kindred {

using nlohmann::json;

void validate_motif(std::string_view motif) {
    if (motif.size() < 2 || motif.size() > 6)
        throw ValidationError("motif length must be 2-6 bases, got \"" + std::string(motif) + "\"");
    for (char c : motif)
        if (c != 'A' && c != 'C' && c != 'G' && c != 'T')
            throw ValidationError(std::string("motif contains non-ACGT character '") + c + "'");
}

std::string Allele::display() const {
    std::string s = std::to_string(full_repeats);
    if (partial_bases > 0) {
        s += '.';
        s += std::to_string(partial_bases);
    }
    return s;
}

namespace {

int parse_nonneg_int(std::string_view text, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
        throw ParseError(std::string("invalid ") + what + ": \"" + std::string(text) + "\"");
    return value;
}

}  // namespace

Allele Allele::parse(std::string_view text) {
    Allele a;
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        a.full_repeats = parse_nonneg_int(text, "allele");
    } else {
        a.full_repeats = parse_nonneg_int(text.substr(0, dot), "allele");
        a.partial_bases = parse_nonneg_int(text.substr(dot + 1), "allele microvariant");
        if (a.partial_bases == 0)
            throw ParseError("microvariant suffix must be positive in \"" + std::string(text) + "\"");
    }
    return a;
}

GenotypePair::GenotypePair(Allele a, Allele b) {
    // normalize so unordered pairs compare equal
    if (b < a) std::swap(a, b);
    first = a;
    second = b;
}

void StrProfile::add(Marker marker, GenotypePair pair) {
    validate_motif(marker.motif);
    if (find(marker.name))
        throw ValidationError("duplicate marker \"" + marker.name + "\" in profile");
    if (pair.first.partial_bases >= static_cast<int>(marker.motif.size()) ||
        pair.second.partial_bases >= static_cast<int>(marker.motif.size()))
        throw ValidationError("microvariant suffix must be shorter than the motif of " + marker.name);
    entries_.push_back({std::move(marker), pair});
}

const ProfileEntry* StrProfile::find(std::string_view marker_name) const {
    for (const auto& e : entries_)
        if (e.marker.name == marker_name) return &e;
    return nullptr;
}

std::set<std::string> StrProfile::marker_names() const {
    std::set<std::string> names;
    for (const auto& e : entries_) names.insert(e.marker.name);
    return names;
}

std::string expand_allele(std::string_view motif, const Allele& allele) {
    validate_motif(motif);
    if (allele.partial_bases >= static_cast<int>(motif.size()))
        throw ValidationError("microvariant suffix " + std::to_string(allele.partial_bases) +
                              " not shorter than motif \"" + std::string(motif) + "\"");
    if (allele.full_repeats < 0 || allele.partial_bases < 0)
        throw ValidationError("allele counts must be non-negative");
    std::string out;
    out.reserve(motif.size() * allele.full_repeats + allele.partial_bases);
    for (int i = 0; i < allele.full_repeats; ++i) out += motif;
    out.append(motif.substr(0, allele.partial_bases));
    return out;
}

PaternityResult paternity_consistent(const StrProfile& child, const StrProfile& parent) {
    auto child_names = child.marker_names();
    auto parent_names = parent.marker_names();
    if (child_names != parent_names) {
        std::string missing;
        for (const auto& n : child_names)
            if (!parent_names.count(n)) missing += " " + n;
        for (const auto& n : parent_names)
            if (!child_names.count(n)) missing += " " + n;
        throw ValidationError("profiles cover different marker sets; unmatched:" + missing);
    }
    PaternityResult result;
    result.overall = true;
    for (const auto& e : child) {
        const ProfileEntry* p = parent.find(e.marker.name);
        bool ok = e.pair.shares_allele(p->pair);
        result.per_marker[e.marker.name] = ok;
        result.overall = result.overall && ok;
    }
    return result;
}

std::set<GenotypePair> possible_children(const GenotypePair& mother, const GenotypePair& father) {
    std::set<GenotypePair> children;
    for (const Allele& m : {mother.first, mother.second})
        for (const Allele& f : {father.first, father.second})
            children.insert(GenotypePair(m, f));
    return children;
}

StrProfile parse_profile(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("profile JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("markers") || !doc["markers"].is_array())
        throw ParseError("profile document must be an object with a \"markers\" array");
    StrProfile profile;
    for (const auto& m : doc["markers"]) {
        if (!m.contains("name") || !m.contains("motif") || !m.contains("alleles"))
            throw ParseError("marker entry needs \"name\", \"motif\" and \"alleles\"");
        const auto& alleles = m["alleles"];
        if (!alleles.is_array() || alleles.size() != 2)
            throw ParseError("marker \"" + m["name"].get<std::string>() +
                             "\" must list exactly two alleles");
        GenotypePair pair(Allele::parse(alleles[0].get<std::string>()),
                          Allele::parse(alleles[1].get<std::string>()));
        profile.add(Marker{m["name"].get<std::string>(), m["motif"].get<std::string>()}, pair);
    }
    return profile;
}

std::string serialize_profile(const StrProfile& profile) {
    std::vector<const ProfileEntry*> sorted;
    for (const auto& e : profile) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](const ProfileEntry* a, const ProfileEntry* b) { return a->marker.name < b->marker.name; });
    json markers = json::array();
    for (const auto* e : sorted) {
        markers.push_back({{"name", e->marker.name},
                           {"motif", e->marker.motif},
                           {"alleles", {e->pair.first.display(), e->pair.second.display()}}});
    }
    return json{{"markers", markers}}.dump();
}

std::vector<Marker> default_panel() {
    return {
        {"D8S1179", "TCTA"}, {"D21S11", "TCTA"}, {"D7S820", "GATA"},  {"CSF1PO", "AGAT"},
        {"D3S1358", "TCTA"}, {"TH01", "AATG"},   {"D13S317", "TATC"}, {"D16S539", "GATA"},
        {"D2S1338", "TGCC"}, {"D19S433", "AAGG"},
        // panel filled to 16 with further CODIS core loci
        {"D5S818", "AGAT"},  {"D18S51", "AGAA"}, {"FGA", "TTTC"},     {"vWA", "TCTA"},
        {"TPOX", "AATG"},    {"D12S391", "AGAT"},
    };
}

StrProfile default_panel_template() {
    StrProfile profile;
    for (auto& m : default_panel()) profile.add(m, GenotypePair(Allele{10}, Allele{10}));
    return profile;
}

}  // namespace kindred
