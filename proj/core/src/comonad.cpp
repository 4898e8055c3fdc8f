#include <ddc/comonad.hpp>
#include <ddc/error.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/parallel.hpp>

#include <sstream>

namespace ddc {

auto to_string(const ElementCode & code) -> std::string
{
    std::string out = "[";
    for (std::size_t i = 0 ; i < code.size() ; ++i)
        out += (i ? " " : "") + std::to_string(code[i]);
    return out + "]";
}

auto coalgebra_violation(const Comonad & c, const Coalgebra & a) -> std::optional<std::string>
{
    const auto & x = a.carrier;
    if (! (a.alpha.source() == x))
        return "alpha is not defined on the carrier";
    auto cx = c.apply(x);
    if (! (a.alpha.target() == cx))
        return "alpha does not land in " + c.name() + "(X)";
    if (! a.alpha.is_valid())
        return "alpha is not a homomorphism";

    auto eps = c.counit(x);
    for (int e = 0 ; e < x.size() ; ++e)
        if (eps(a.alpha(e)) != e)
            return "counit law fails at element " + std::to_string(e);

    for (int e = 0 ; e < x.size() ; ++e) {
        auto lhs = c.comult_code(x, a.alpha(e));
        auto rhs = c.lift_code(a.alpha, a.alpha(e));
        if (lhs != rhs)
            return "square law fails at element " + std::to_string(e) + ": " + to_string(lhs) + " vs " + to_string(rhs);
    }
    return std::nullopt;
}

void require_coalgebra(const Comonad & c, const Coalgebra & a)
{
    if (auto why = coalgebra_violation(c, a))
        throw LawViolation(*why);
}

auto LawReport::all_passed() const -> bool
{
    for (auto & l : laws)
        if (! l.passed)
            return false;
    return true;
}

auto LawReport::find(const std::string & law) const -> const LawResult *
{
    for (auto & l : laws)
        if (l.law == law)
            return &l;
    return nullptr;
}

auto LawReport::to_string() const -> std::string
{
    std::ostringstream out;
    for (auto & l : laws) {
        out << (l.passed ? "PASS " : "FAIL ") << l.law << " (checked " << l.checked << ")";
        if (! l.passed)
            out << ": " << l.counterexample;
        out << "\n";
    }
    for (auto & s : skipped)
        out << "SKIP " << s << "\n";
    return out.str();
}

namespace detail
{
    LawTally::LawTally(std::vector<std::string> names)
    {
        for (auto & n : names)
            results_.push_back(LawResult{ std::move(n), true, 0, {} });
    }

    void LawTally::pass(std::size_t law, std::size_t n)
    {
        results_[law].checked += n;
    }

    void LawTally::fail(std::size_t law, std::string counterexample)
    {
        auto & r = results_[law];
        ++r.checked;
        if (r.passed) {
            r.passed = false;
            r.counterexample = std::move(counterexample);
        }
    }

    void LawTally::merge(const LawTally & other)
    {
        for (std::size_t i = 0 ; i < results_.size() ; ++i) {
            auto & mine = results_[i];
            auto & theirs = other.results_[i];
            mine.checked += theirs.checked;
            if (mine.passed && ! theirs.passed) {
                mine.passed = false;
                mine.counterexample = theirs.counterexample;
            }
        }
    }

    auto LawTally::report() const -> std::vector<LawResult>
    {
        return results_;
    }

    auto describe(const Structure & s, std::size_t index) -> std::string
    {
        return "corpus[" + std::to_string(index) + "] (size " + std::to_string(s.size()) + ", "
            + std::to_string(s.total_tuple_count()) + " tuples)";
    }
}

namespace
{
    enum ComonadLaw : std::size_t { counit_valid, comult_valid, counit_left, counit_right, coassoc, codes };

    auto check_one(const Comonad & c, const Structure & b, std::size_t index, const LawOptions & opts, detail::LawTally & tally)
    {
        auto where = [&] (int e) { return detail::describe(b, index) + " element " + std::to_string(e); };

        auto cb = c.apply(b);
        auto eps = c.counit(b);
        auto delta = c.comult(b);
        if (opts.corrupt_comult)
            delta = opts.corrupt_comult(delta);

        if (eps.is_valid())
            tally.pass(counit_valid);
        else
            tally.fail(counit_valid, detail::describe(b, index));
        if (delta.is_valid())
            tally.pass(comult_valid);
        else
            tally.fail(comult_valid, detail::describe(b, index));

        auto eps_c = c.counit(cb);
        auto lift_eps = c.lift(eps);
        for (int e = 0 ; e < cb.size() ; ++e) {
            int d = delta(e);
            if (eps_c(d) == e)
                tally.pass(counit_left);
            else
                tally.fail(counit_left, where(e) + " maps to " + std::to_string(eps_c(d)));

            if (lift_eps(d) == e)
                tally.pass(counit_right);
            else
                tally.fail(counit_right, where(e) + " maps to " + std::to_string(lift_eps(d)));

            auto lhs = c.comult_code(cb, d);
            auto rhs = c.lift_code(delta, d);
            if (lhs == rhs)
                tally.pass(coassoc);
            else
                tally.fail(coassoc, where(e) + ": " + to_string(lhs) + " vs " + to_string(rhs));

            auto own = c.code(b, e);
            bool consistent = own == c.lift_code(Homomorphism::identity(b), e)
                && c.code(cb, d) == c.comult_code(b, e)
                && c.element_of(b, own) == e;
            if (consistent)
                tally.pass(codes);
            else
                tally.fail(codes, where(e));
        }
    }
}

auto check_comonad_laws(const Comonad & c, const std::vector<Structure> & corpus, const LawOptions & opts) -> LawReport
{
    const std::vector<std::string> names = {
        "counit is a homomorphism", "comultiplication is a homomorphism",
        "counit-left", "counit-right", "coassociativity", "element codes" };

    std::vector<detail::LawTally> tallies(corpus.size(), detail::LawTally{ names });
    std::vector<std::string> skipped(corpus.size());
    parallel_for(corpus.size(), opts.jobs, [&] (std::size_t i) {
        try {
            check_one(c, corpus[i], i, opts, tallies[i]);
        }
        catch (const CapExceeded & e) {
            skipped[i] = detail::describe(corpus[i], i) + ": " + e.what();
        }
    });

    detail::LawTally total{ names };
    LawReport report;
    for (std::size_t i = 0 ; i < corpus.size() ; ++i) {
        total.merge(tallies[i]);
        if (! skipped[i].empty())
            report.skipped.push_back(skipped[i]);
    }
    report.laws = total.report();
    return report;
}

namespace
{
    enum MorphismLaw : std::size_t { component_valid, counit_triangle, comult_square, naturality, component_codes };

    void check_morphism_at(const ComonadMorphism & m, const std::vector<Structure> & corpus, std::size_t index,
                           const LawOptions & opts, detail::LawTally & tally)
    {
        const auto & src = m.source();
        const auto & tgt = m.target();
        const auto & b = corpus[index];
        auto where = [&] (int e) { return detail::describe(b, index) + " element " + std::to_string(e); };

        auto lambda = m.component(b);
        auto db = tgt.apply(b);
        if (lambda.is_valid() && lambda.target() == db)
            tally.pass(component_valid);
        else
            tally.fail(component_valid, detail::describe(b, index));

        auto eps_src = src.counit(b);
        auto eps_tgt = tgt.counit(b);
        const auto & cb = lambda.source();

        for (int e = 0 ; e < cb.size() ; ++e) {
            if (eps_tgt(lambda(e)) == eps_src(e))
                tally.pass(counit_triangle);
            else
                tally.fail(counit_triangle, where(e));

            auto lhs = tgt.comult_code(b, lambda(e));
            // λ_{T B} ∘ S(λ) ∘ δ^S, symbolically: S(S(B)) is never built
            auto rhs = m.component_code_of(db, src.map_code(lambda, src.comult_code(b, e)));
            if (lhs == rhs)
                tally.pass(comult_square);
            else
                tally.fail(comult_square, where(e) + ": " + to_string(lhs) + " vs " + to_string(rhs));

            if (m.component_code(b, e) == tgt.code(b, lambda(e)))
                tally.pass(component_codes);
            else
                tally.fail(component_codes, where(e));
        }

        for (std::size_t j = 0 ; j < corpus.size() ; ++j) {
            const auto & b2 = corpus[j];
            if (b2.signature() != b.signature())
                continue;
            std::vector<std::vector<int>> maps;
            for_each_hom(HomQuery{ b, b2, HomMode::hom, std::nullopt }, [&] (std::span<const int> map) {
                maps.emplace_back(map.begin(), map.end());
                return maps.size() < opts.naturality_limit;
            });
            for (auto & map : maps) {
                Homomorphism h{ b, b2, map };
                auto lift_src = src.lift(h);
                for (int e = 0 ; e < cb.size() ; ++e) {
                    auto lhs = m.component_code(b2, lift_src(e));
                    auto rhs = tgt.lift_code(h, lambda(e));
                    if (lhs == rhs)
                        tally.pass(naturality);
                    else
                        tally.fail(naturality, where(e) + " along a map into corpus[" + std::to_string(j) + "]");
                }
            }
        }
    }
}

auto check_comonad_morphism(const ComonadMorphism & m, const std::vector<Structure> & corpus, const LawOptions & opts) -> LawReport
{
    const std::vector<std::string> names = {
        "component is a homomorphism", "counit triangle", "comultiplication square", "naturality", "component codes" };

    std::vector<detail::LawTally> tallies(corpus.size(), detail::LawTally{ names });
    std::vector<std::string> skipped(corpus.size());
    parallel_for(corpus.size(), opts.jobs, [&] (std::size_t i) {
        try {
            check_morphism_at(m, corpus, i, opts, tallies[i]);
        }
        catch (const CapExceeded & e) {
            skipped[i] = detail::describe(corpus[i], i) + ": " + e.what();
        }
    });

    detail::LawTally total{ names };
    LawReport report;
    for (std::size_t i = 0 ; i < corpus.size() ; ++i) {
        total.merge(tallies[i]);
        if (! skipped[i].empty())
            report.skipped.push_back(skipped[i]);
    }
    report.laws = total.report();
    return report;
}

} // namespace ddc
