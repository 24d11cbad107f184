#include "factdual/prime_fn.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace factdual {

namespace {

std::vector<u64> parse_u64_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("PrimeFn: empty list item");
        out.push_back(std::stoull(item));
    }
    return out;
}

}  // namespace

PrimeFn PrimeFn::identity() { return PrimeFn(Kind::identity); }

PrimeFn PrimeFn::one() { return PrimeFn(Kind::one); }

PrimeFn PrimeFn::residue(u64 k, u64 l) {
    if (k < 1) throw std::invalid_argument("PrimeFn::residue: modulus must be >= 1");
    PrimeFn f(Kind::residue);
    f.a_ = k;
    f.b_ = l % k;
    return f;
}

PrimeFn PrimeFn::finite_set(std::vector<u64> primes) {
    PrimeFn f(Kind::finite_set);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    f.set_ = std::move(primes);
    return f;
}

PrimeFn PrimeFn::random_table(u64 seed) {
    PrimeFn f(Kind::random_table);
    f.a_ = seed;
    return f;
}

PrimeFn PrimeFn::sqrt_window(u64 x) {
    if (x < 1) throw std::invalid_argument("PrimeFn::sqrt_window: x must be >= 1");
    PrimeFn f(Kind::sqrt_window);
    f.a_ = isqrt(x);
    f.b_ = x;
    return f;
}

PrimeFn PrimeFn::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (head == "id" && args.empty()) return identity();
    if (head == "one" && args.empty()) return one();
    if (head == "res") {
        auto xs = parse_u64_list(args);
        if (xs.size() != 2) throw std::invalid_argument("PrimeFn: res wants res:k,l");
        return residue(xs[0], xs[1]);
    }
    if (head == "set") return finite_set(parse_u64_list(args));
    if (head == "rand") {
        auto xs = parse_u64_list(args);
        if (xs.size() != 1) throw std::invalid_argument("PrimeFn: rand wants rand:seed");
        return random_table(xs[0]);
    }
    if (head == "window") {
        auto xs = parse_u64_list(args);
        if (xs.size() != 1) throw std::invalid_argument("PrimeFn: window wants window:x");
        return sqrt_window(xs[0]);
    }
    throw std::invalid_argument("PrimeFn: cannot parse '" + text + "'");
}

i64 PrimeFn::operator()(u64 p) const {
    if (p == 0) return 0;  // absent prime contributes nothing
    switch (kind_) {
        case Kind::identity:
            return static_cast<i64>(p);
        case Kind::one:
            return 1;
        case Kind::residue:
            return p % a_ == b_ ? 1 : 0;
        case Kind::finite_set:
            return std::binary_search(set_.begin(), set_.end(), p) ? 1 : 0;
        case Kind::random_table:
            return static_cast<i64>(splitmix64(p ^ splitmix64(a_)) % 17) - 8;
        case Kind::sqrt_window:
            return (p > a_ && p <= b_) ? 1 : 0;
    }
    return 0;
}

std::string PrimeFn::describe() const {
    switch (kind_) {
        case Kind::identity:
            return "id";
        case Kind::one:
            return "one";
        case Kind::residue:
            return "res:" + std::to_string(a_) + "," + std::to_string(b_);
        case Kind::finite_set: {
            std::string s = "set:";
            for (std::size_t i = 0; i < set_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(set_[i]);
            }
            return s;
        }
        case Kind::random_table:
            return "rand:" + std::to_string(a_);
        case Kind::sqrt_window:
            return "window:" + std::to_string(b_);
    }
    return "?";
}

}  // namespace factdual
