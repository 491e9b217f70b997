#include "bigdeg/onetype.hpp"

#include <stdexcept>

namespace bigdeg {

int code_alphabet_size(const Signature& sig) {
    int p = 1;
    for (const auto& r : sig.relations) {
        if (r.arity != 2) throw std::invalid_argument("code alphabet: binary symbols only");
        p *= r.symmetric ? 2 : 4;
    }
    return p;
}

Code pair_code(const FinStructure& s, int u, int x) {
    int code = 0;
    for (std::size_t r = 0; r < s.signature.relations.size(); ++r) {
        const auto& sym = s.signature.relations[r];
        if (sym.symmetric) {
            code = code * 2 + (s.has(r, {u, x}) ? 1 : 0);
        } else {
            code = code * 4 + (s.has(r, {u, x}) ? 2 : 0) + (s.has(r, {x, u}) ? 1 : 0);
        }
    }
    return static_cast<Code>(code);
}

void apply_code(FinStructure& s, int u, int x, Code code) {
    int c = code;
    for (int r = static_cast<int>(s.signature.relations.size()) - 1; r >= 0; --r) {
        const auto& sym = s.signature.relations[r];
        if (sym.symmetric) {
            if (c & 1) s.add(r, {u, x});
            c /= 2;
        } else {
            if (c & 1) s.tuples[r].insert({x, u});
            if (c & 2) s.tuples[r].insert({u, x});
            c /= 4;
        }
    }
}

CodeSeq type_of(const FinStructure& s, int j, int n) {
    CodeSeq t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back(pair_code(s, i, j));
    return t;
}

FinStructure extend_by_type(const FinStructure& k, const CodeSeq& t) {
    if (static_cast<int>(t.size()) != k.size)
        throw std::invalid_argument("extend_by_type: type length must equal prefix size");
    FinStructure out = k;
    out.size = k.size + 1;
    for (int i = 0; i < k.size; ++i) apply_code(out, i, k.size, t[i]);
    return out;
}

bool type_realizable(const FinStructure& k, const CodeSeq& t, const ClassSpec& spec) {
    return class_member(extend_by_type(k, t), spec);
}

}  // namespace bigdeg
