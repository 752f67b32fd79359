#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace periph {

/// One letter of a free-group word: generator index (0-based) and exponent +-1.
struct Letter {
    int generator = 0;
    int exponent = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word in a free group over indexed generators.  The empty word is the identity.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    void push_back(Letter l) { letters_.push_back(l); }

    /// Appends x^k as |k| letters.
    void append_power(int generator, int k) {
        const int e = k < 0 ? -1 : 1;
        for (int i = 0; i < (k < 0 ? -k : k); ++i) letters_.push_back({generator, e});
    }

    Word inverse() const {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back({it->generator, -it->exponent});
        return w;
    }

    /// Cancels adjacent x x^-1 pairs.
    Word reduced() const {
        std::vector<Letter> out;
        for (const Letter& l : letters_) {
            if (!out.empty() && out.back().generator == l.generator &&
                out.back().exponent == -l.exponent)
                out.pop_back();
            else
                out.push_back(l);
        }
        return Word(std::move(out));
    }

    friend Word operator*(const Word& a, const Word& b) {
        std::vector<Letter> l = a.letters_;
        l.insert(l.end(), b.letters_.begin(), b.letters_.end());
        return Word(std::move(l));
    }

    friend bool operator==(const Word&, const Word&) = default;

    /// Sum of exponents per generator.
    std::vector<long long> exponent_sums(int generator_count) const {
        std::vector<long long> v(static_cast<std::size_t>(generator_count), 0);
        for (const Letter& l : letters_) v[static_cast<std::size_t>(l.generator)] += l.exponent;
        return v;
    }

    int max_generator() const {
        int m = -1;
        for (const Letter& l : letters_) m = l.generator > m ? l.generator : m;
        return m;
    }

    /// Human readable form, e.g. "x0 x2^-1".
    std::string str(const std::string& prefix = "x") const {
        if (letters_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += ' ';
            s += prefix + std::to_string(letters_[i].generator);
            if (letters_[i].exponent < 0) s += "^-1";
        }
        return s;
    }

private:
    std::vector<Letter> letters_;
};

}  // namespace periph
