#include "bniep/certificate.hpp"

#include <stdexcept>

#include "bniep/constructors.hpp"
#include "bniep/core.hpp"
#include "bniep/diagonal.hpp"
#include "bniep/glue.hpp"
#include "bniep/positive.hpp"

namespace bniep {

namespace {

bool matrix_equal(const std::optional<Matrix>& a, const std::optional<Matrix>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (a->rows() != b->rows() || a->cols() != b->cols()) return false;
    for (std::size_t i = 0; i < a->rows(); ++i)
        for (std::size_t j = 0; j < a->cols(); ++j)
            if ((*a)(i, j) != (*b)(i, j)) return false;
    return true;
}

double need(const Certificate& c, const std::string& key) {
    auto it = c.params.find(key);
    if (it == c.params.end())
        throw std::invalid_argument("replay: certificate '" + c.kind + "' missing param '" + key +
                                    "'");
    return it->second;
}

const Certificate& child(const Certificate& c, std::size_t i) {
    if (c.children.size() <= i)
        throw std::invalid_argument("replay: certificate '" + c.kind + "' missing child");
    return c.children[i];
}

}  // namespace

bool Certificate::operator==(const Certificate& o) const {
    return kind == o.kind && params == o.params && values == o.values && aux == o.aux &&
           matrix_equal(mat, o.mat) && children == o.children;
}

BisymMatrix replay(const Certificate& cert) {
    const std::string& k = cert.kind;

    if (k == "zero") return zero_bisym(std::size_t(need(cert, "order")));
    if (k == "scalar") return scalar_bisym(need(cert, "value"));
    if (k == "pair") return pair_matrix(need(cert, "hi"), need(cert, "lo"));
    if (k == "user-block") {
        if (!cert.mat) throw std::invalid_argument("replay: user-block without matrix payload");
        return BisymMatrix::from_matrix(*cert.mat, 0.0);
    }
    if (k == "suleimanova-step")
        return glue_ab(replay(child(cert, 0)), zero_bisym(1), need(cert, "a"), need(cert, "b"));
    if (k == "glue-ab")
        return glue_ab(replay(child(cert, 0)), replay(child(cert, 1)), need(cert, "a"),
                       need(cert, "b"));
    if (k == "center-insert") return center_insert(replay(child(cert, 0)), need(cert, "value"));
    if (k == "nest") return nest(replay(child(cert, 0)), replay(child(cert, 1)));
    if (k == "diag-pad")
        return nest_pair(need(cert, "hi"), need(cert, "lo"), replay(child(cert, 0)));
    if (k == "merge-transfer")
        return merge_transfer(replay(child(cert, 0)), replay(child(cert, 1)),
                              need(cert, "epsilon"));
    if (k == "borobia-3.4" || k == "borobia-3.5" || k == "borobia-3.6")
        return replay(child(cert, 0));
    if (k == "soto-3.8") {
        if (!cert.mat) throw std::invalid_argument("replay: soto-3.8 without B payload");
        std::vector<SotoBlock> blocks;
        for (const Certificate& bc : cert.children) {
            if (bc.kind != "soto-block")
                throw std::invalid_argument("replay: soto-3.8 child is not a soto-block");
            SotoBlock blk;
            blk.values = bc.values;
            blk.omega = need(bc, "omega");
            blk.supplied = replay(child(bc, 0));
            blocks.push_back(std::move(blk));
        }
        return construct_soto(Spectrum(cert.values), blocks, cert.mat).matrix;
    }
    if (k == "positive") return positify(replay(child(cert, 0)), need(cert, "epsilon")).matrix;
    if (k == "diagonal") {
        DiagonalSpec spec{Spectrum(cert.values), cert.aux};
        return (cert.values.size() % 2 == 1) ? construct_diag_odd(spec).matrix
                                             : construct_diag_even(spec).matrix;
    }
    throw std::invalid_argument("replay: unknown certificate kind '" + k + "'");
}

}  // namespace bniep
