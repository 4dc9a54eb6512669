#include "ecd/exterior.hpp"

#include <sstream>

namespace ecd {

std::string render(const Form<Rational>& f, const std::string& symbol) {
    if (f.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, v] : f.terms()) {
        Rational mag = v < 0 ? Rational(-v) : v;
        if (first)
            os << (v < 0 ? "-" : "");
        else
            os << (v < 0 ? " - " : " + ");
        first = false;
        os << to_string(mag);
        bool lead = true;
        for (int i : indices_of(m)) {
            os << (lead ? " · " : " ∧ ") << symbol << "^" << i;
            lead = false;
        }
    }
    return os.str();
}

namespace {

void expect(bool ok, const std::string& what) {
    if (!ok) throw ParseError("form parse: " + what);
}

}  // namespace

Form<Rational> parse_form(const std::string& text, int dim, int degree, const std::string& symbol) {
    Form<Rational> out(dim, degree);
    std::string s = text;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && s[i] == ' ') ++i;
    };
    auto starts = [&](const std::string& tok) { return s.compare(i, tok.size(), tok) == 0; };

    skip();
    if (s.substr(i) == "0") return out;
    bool neg = false;
    if (starts("-")) {
        neg = true;
        ++i;
    }
    while (true) {
        skip();
        std::size_t b = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        expect(i > b, "expected coefficient");
        Rational c = parse_rational(s.substr(b, i - b));
        if (neg) c = -c;
        std::vector<int> idx;
        skip();
        std::string sep = " · ";
        if (starts("·")) {
            i += std::string("·").size();
            while (true) {
                skip();
                expect(starts(symbol + "^"), "expected generator");
                i += symbol.size() + 1;
                std::size_t nb = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                expect(i > nb, "expected generator index");
                idx.push_back(std::stoi(s.substr(nb, i - nb)));
                skip();
                if (starts("∧")) {
                    i += std::string("∧").size();
                    continue;
                }
                break;
            }
        }
        for (int k : idx) expect(k >= 0 && k < dim, "generator index out of range");
        expect(static_cast<int>(idx.size()) == degree, "term has wrong degree");
        Form<Rational> term = Form<Rational>::scalar(dim, c);
        for (int k : idx) term = wedge(term, Form<Rational>::generator(dim, k));
        out += term;
        skip();
        if (i >= s.size()) break;
        if (starts("+")) neg = false;
        else if (starts("-")) neg = true;
        else expect(false, "expected + or -");
        ++i;
    }
    return out;
}

}  // namespace ecd
