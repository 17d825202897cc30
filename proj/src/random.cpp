#include "fext/random.hpp"

namespace fext {

namespace {

FnExpr leaf(Rng& rng, const RandomFnOptions& opts) {
    if (uniform(rng, 3) != 0) return FnExpr::var();
    return FnExpr::constant(uniform(rng, opts.max_constant + 1));
}

FnExpr gen(Rng& rng, const RandomFnOptions& opts, int depth) {
    if (depth <= 0 || uniform(rng, 4) == 0) return leaf(rng, opts);
    auto sub = [&] { return gen(rng, opts, depth - 1); };
    auto divisor = [&] { return Nat(1 + uniform(rng, opts.max_constant)); };
    // children are drawn into locals: argument evaluation order is unspecified
    for (;;) {
        switch (uniform(rng, 13)) {
            case 0: return FnExpr::succ(sub());
            case 1: return FnExpr::pred(sub());
            case 2: {
                auto a = sub();
                return FnExpr::add(a, sub());
            }
            case 3: {
                auto a = sub();
                return FnExpr::mul(a, sub());
            }
            case 4: {
                auto a = sub();
                return FnExpr::monus(a, sub());
            }
            case 5: {
                auto a = sub();
                return FnExpr::div(a, divisor());
            }
            case 6: {
                auto a = sub();
                return FnExpr::mod(a, divisor());
            }
            case 7: {
                auto a = sub();
                auto b = sub();
                auto c = sub();
                return FnExpr::ifeq(a, b, c, sub());
            }
            case 8: {
                if (!opts.allow_pairing) continue;
                auto a = sub();
                return FnExpr::pair(a, sub());
            }
            case 9:
                if (!opts.allow_pairing) continue;
                return FnExpr::p1(sub());
            case 10:
                if (!opts.allow_pairing) continue;
                return FnExpr::p2(sub());
            case 11: {
                if (!opts.allow_compose) continue;
                auto a = sub();
                return FnExpr::compose_node(a, sub());
            }
            default: return leaf(rng, opts);
        }
    }
}

}  // namespace

FnExpr random_fn(Rng& rng, const RandomFnOptions& opts) { return gen(rng, opts, opts.max_depth); }

FnExpr random_indicator(Rng& rng, const RandomFnOptions& opts) {
    const FnExpr one = FnExpr::constant(1);
    const FnExpr zero = FnExpr::constant(0);
    switch (uniform(rng, 4)) {
        case 0: {
            std::uint64_t k = 2 + uniform(rng, 5);
            return FnExpr::ifeq(FnExpr::mod(FnExpr::var(), k), FnExpr::constant(uniform(rng, k)), one, zero);
        }
        case 1: {
            // x >= c
            auto c = FnExpr::constant(uniform(rng, 1000));
            return FnExpr::ifeq(FnExpr::monus(c, FnExpr::var()), zero, one, zero);
        }
        default: {
            auto a = random_fn(rng, opts);
            return FnExpr::ifeq(a, random_fn(rng, opts), one, zero);
        }
    }
}

NaryFn random_nary(Rng& rng, std::size_t arity, const RandomFnOptions& opts) {
    // each coordinate goes through its own unary term, then the results are
    // folded with random binary operations
    FnExpr acc = compose(random_fn(rng, opts), coordinate(arity, 0));
    for (std::size_t i = 1; i < arity; ++i) {
        FnExpr next = compose(random_fn(rng, opts), coordinate(arity, i));
        switch (uniform(rng, 5)) {
            case 0: acc = FnExpr::add(acc, next); break;
            case 1: acc = FnExpr::mul(acc, next); break;
            case 2: acc = FnExpr::monus(acc, next); break;
            case 3: acc = FnExpr::pair(acc, next); break;
            default: {
                auto other = random_fn(rng, opts);
                acc = FnExpr::ifeq(acc, next, other, FnExpr::constant(uniform(rng, opts.max_constant + 1)));
            }
        }
    }
    return {"r" + std::to_string(arity), arity, acc};
}

}  // namespace fext
