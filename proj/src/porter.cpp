#include "revsum/porter.hpp"

namespace revsum {

namespace {

// State for one stemming run. `end` is the index of the last live character;
// characters past it are dead. `j` marks the end of the stem once a suffix
// has matched (it can reach -1 when the suffix is the whole word), and the
// conditions (m, *v*, *o, ...) are evaluated over [0, j].
class Stemmer {
public:
    explicit Stemmer(std::string_view token)
        : b_(token), end_(static_cast<int>(b_.size()) - 1) {}

    std::string run() {
        if (b_.size() <= 2) return b_;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_.substr(0, static_cast<std::size_t>(end_) + 1);
    }

private:
    std::string b_;
    int end_ = -1;
    int j_ = 0;

    char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

    bool is_consonant(int i) const {
        const char c = at(i);
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
        if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
        return true;
    }

    // Number of vowel-consonant sequences in [0, j].
    int measure() const {
        int n = 0;
        int i = 0;
        for (;;) {
            if (i > j_) return n;
            if (!is_consonant(i)) break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j_) return n;
                if (is_consonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j_) return n;
                if (!is_consonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i) {
            if (!is_consonant(i)) return true;
        }
        return false;
    }

    bool double_consonant(int i) const {
        if (i < 1) return false;
        if (at(i) != at(i - 1)) return false;
        return is_consonant(i);
    }

    // consonant-vowel-consonant ending at i, last consonant not w/x/y;
    // used to restore a trailing e (hop -> hope is blocked, fil -> file is not).
    bool cvc(int i) const {
        if (i < 2 || !is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2)) {
            return false;
        }
        const char c = at(i);
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) {
        const int len = static_cast<int>(s.size());
        if (s[s.size() - 1] != at(end_)) return false;
        if (len > end_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(end_ - len + 1), s.size(), s) != 0) {
            return false;
        }
        j_ = end_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), s.size(), s);
        end_ = j_ + static_cast<int>(s.size());
    }

    void replace_if_measure(std::string_view s) {
        if (measure() > 0) set_to(s);
    }

    void step1ab() {
        if (at(end_) == 's') {
            if (ends("sses")) {
                end_ -= 2;
            } else if (ends("ies")) {
                set_to("i");
            } else if (at(end_ - 1) != 's') {
                --end_;
            }
        }
        if (ends("eed")) {
            if (measure() > 0) --end_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            end_ = j_;
            if (ends("at")) {
                set_to("ate");
            } else if (ends("bl")) {
                set_to("ble");
            } else if (ends("iz")) {
                set_to("ize");
            } else if (double_consonant(end_)) {
                --end_;
                const char c = at(end_);
                if (c == 'l' || c == 's' || c == 'z') ++end_;
            } else if (measure() == 1 && cvc(end_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(end_)] = 'i';
    }

    void step2() {
        if (end_ < 1) return;
        switch (at(end_ - 1)) {
            case 'a':
                if (ends("ational")) replace_if_measure("ate");
                else if (ends("tional")) replace_if_measure("tion");
                break;
            case 'c':
                if (ends("enci")) replace_if_measure("ence");
                else if (ends("anci")) replace_if_measure("ance");
                break;
            case 'e':
                if (ends("izer")) replace_if_measure("ize");
                break;
            case 'l':
                if (ends("bli")) replace_if_measure("ble");
                else if (ends("alli")) replace_if_measure("al");
                else if (ends("entli")) replace_if_measure("ent");
                else if (ends("eli")) replace_if_measure("e");
                else if (ends("ousli")) replace_if_measure("ous");
                break;
            case 'o':
                if (ends("ization")) replace_if_measure("ize");
                else if (ends("ation")) replace_if_measure("ate");
                else if (ends("ator")) replace_if_measure("ate");
                break;
            case 's':
                if (ends("alism")) replace_if_measure("al");
                else if (ends("iveness")) replace_if_measure("ive");
                else if (ends("fulness")) replace_if_measure("ful");
                else if (ends("ousness")) replace_if_measure("ous");
                break;
            case 't':
                if (ends("aliti")) replace_if_measure("al");
                else if (ends("iviti")) replace_if_measure("ive");
                else if (ends("biliti")) replace_if_measure("ble");
                break;
            case 'g':
                if (ends("logi")) replace_if_measure("log");
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (at(end_)) {
            case 'e':
                if (ends("icate")) replace_if_measure("ic");
                else if (ends("ative")) replace_if_measure("");
                else if (ends("alize")) replace_if_measure("al");
                break;
            case 'i':
                if (ends("iciti")) replace_if_measure("ic");
                break;
            case 'l':
                if (ends("ical")) replace_if_measure("ic");
                else if (ends("ful")) replace_if_measure("");
                break;
            case 's':
                if (ends("ness")) replace_if_measure("");
                break;
            default:
                break;
        }
    }

    void step4() {
        if (end_ < 1) return;
        switch (at(end_ - 1)) {
            case 'a':
                if (!ends("al")) return;
                break;
            case 'c':
                if (!ends("ance") && !ends("ence")) return;
                break;
            case 'e':
                if (!ends("er")) return;
                break;
            case 'i':
                if (!ends("ic")) return;
                break;
            case 'l':
                if (!ends("able") && !ends("ible")) return;
                break;
            case 'n':
                if (!ends("ant") && !ends("ement") && !ends("ment") && !ends("ent")) return;
                break;
            case 'o':
                if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) break;
                if (!ends("ou")) return;
                break;
            case 's':
                if (!ends("ism")) return;
                break;
            case 't':
                if (!ends("ate") && !ends("iti")) return;
                break;
            case 'u':
                if (!ends("ous")) return;
                break;
            case 'v':
                if (!ends("ive")) return;
                break;
            case 'z':
                if (!ends("ize")) return;
                break;
            default:
                return;
        }
        if (measure() > 1) end_ = j_;
    }

    void step5() {
        j_ = end_;
        if (at(end_) == 'e') {
            const int m = measure();
            if (m > 1 || (m == 1 && !cvc(end_ - 1))) --end_;
        }
        if (at(end_) == 'l' && double_consonant(end_) && measure() > 1) --end_;
    }
};

}  // namespace

std::string porter_stem(std::string_view token) {
    if (token.empty()) return std::string();
    return Stemmer(token).run();
}

}  // namespace revsum
