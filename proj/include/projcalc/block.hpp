/*
 * block.hpp — finite-dimensional C*-algebras as block-diagonal matrix
 * algebras, and block-dropping quotient homomorphisms.
 */
#pragma once

#include <numeric>
#include <vector>

#include "numeric.hpp"
#include "types.hpp"

namespace projcalc {

struct BlockAlgebra {
    std::vector<int> block_dims;

    BlockAlgebra() = default;
    explicit BlockAlgebra(std::vector<int> dims) : block_dims(std::move(dims)) {
        if (block_dims.empty())
            throw AlgebraMismatch("BlockAlgebra: needs at least one block");
        for (int d : block_dims)
            if (d <= 0) throw AlgebraMismatch("BlockAlgebra: block dims must be positive");
    }

    int total_dim() const {
        return std::accumulate(block_dims.begin(), block_dims.end(), 0);
    }

    int block_count() const { return static_cast<int>(block_dims.size()); }

    int offset(int block) const {
        int off = 0;
        for (int b = 0; b < block; ++b) off += block_dims[static_cast<size_t>(b)];
        return off;
    }

    bool operator==(const BlockAlgebra& o) const { return block_dims == o.block_dims; }

    // Largest off-block entry of m.
    double off_block_mass(const Mat& m) const {
        double worst = 0.0;
        for (int bi = 0; bi < block_count(); ++bi)
            for (int bj = 0; bj < block_count(); ++bj) {
                if (bi == bj) continue;
                auto blk = m.block(offset(bi), offset(bj), block_dims[static_cast<size_t>(bi)],
                                   block_dims[static_cast<size_t>(bj)]);
                worst = std::max(worst, blk.cwiseAbs().maxCoeff());
            }
        return worst;
    }

    // Zero out off-block entries.
    Mat clean(const Mat& m) const {
        Mat out = Mat::Zero(total_dim(), total_dim());
        for (int b = 0; b < block_count(); ++b) {
            int off = offset(b), d = block_dims[static_cast<size_t>(b)];
            out.block(off, off, d, d) = m.block(off, off, d, d);
        }
        return out;
    }

    Mat block_indicator(int block) const {
        Mat out = Mat::Zero(total_dim(), total_dim());
        int off = offset(block), d = block_dims[static_cast<size_t>(block)];
        out.block(off, off, d, d) = Mat::Identity(d, d);
        return out;
    }
};

struct BlockElement {
    BlockAlgebra algebra;
    Mat          matrix;

    BlockElement() = default;
    BlockElement(BlockAlgebra alg, Mat m, const Tolerances& tol = tolerances())
        : algebra(std::move(alg)), matrix(std::move(m)) {
        if (matrix.rows() != algebra.total_dim() || matrix.cols() != algebra.total_dim())
            throw AlgebraMismatch("BlockElement: matrix size does not match the algebra");
        if (algebra.off_block_mass(matrix) > tol.tau_eq)
            throw AlgebraMismatch("BlockElement: off-block entries exceed tau_eq");
        matrix = algebra.clean(matrix);
    }
};

// Surjective *-homomorphism between block algebras: target block j is a
// copy of source block kept_blocks[j]; the remaining source blocks are
// dropped.
struct QuotientMap {
    BlockAlgebra     source;
    BlockAlgebra     target;
    std::vector<int> kept_blocks;

    QuotientMap() = default;
    QuotientMap(BlockAlgebra src, std::vector<int> kept)
        : source(std::move(src)), kept_blocks(std::move(kept)) {
        std::vector<int> dims;
        std::vector<bool> used(static_cast<size_t>(source.block_count()), false);
        for (int k : kept_blocks) {
            if (k < 0 || k >= source.block_count())
                throw AlgebraMismatch("QuotientMap: kept block index out of range");
            if (used[static_cast<size_t>(k)])
                throw AlgebraMismatch("QuotientMap: kept block indices must be distinct");
            used[static_cast<size_t>(k)] = true;
            dims.push_back(source.block_dims[static_cast<size_t>(k)]);
        }
        target = BlockAlgebra(dims);
    }

    Mat apply_matrix(const Mat& src) const {
        if (src.rows() != source.total_dim())
            throw AlgebraMismatch("QuotientMap: element is not in the source algebra");
        Mat out = Mat::Zero(target.total_dim(), target.total_dim());
        for (size_t j = 0; j < kept_blocks.size(); ++j) {
            int sb = kept_blocks[j];
            int d = source.block_dims[static_cast<size_t>(sb)];
            out.block(target.offset(static_cast<int>(j)), target.offset(static_cast<int>(j)), d,
                      d) = src.block(source.offset(sb), source.offset(sb), d, d);
        }
        return out;
    }

    // Canonical lift: kept blocks filled from the target, dropped blocks 0.
    Mat embed_matrix(const Mat& tgt) const {
        if (tgt.rows() != target.total_dim())
            throw AlgebraMismatch("QuotientMap: element is not in the target algebra");
        Mat out = Mat::Zero(source.total_dim(), source.total_dim());
        for (size_t j = 0; j < kept_blocks.size(); ++j) {
            int sb = kept_blocks[j];
            int d = source.block_dims[static_cast<size_t>(sb)];
            out.block(source.offset(sb), source.offset(sb), d, d) = tgt.block(
                target.offset(static_cast<int>(j)), target.offset(static_cast<int>(j)), d, d);
        }
        return out;
    }

    BlockElement apply(const BlockElement& t, const Tolerances& tol = tolerances()) const {
        if (!(t.algebra == source))
            throw AlgebraMismatch("QuotientMap: element is not in the source algebra");
        return BlockElement(target, apply_matrix(t.matrix), tol);
    }

    BlockElement embed(const BlockElement& t, const Tolerances& tol = tolerances()) const {
        if (!(t.algebra == target))
            throw AlgebraMismatch("QuotientMap: element is not in the target algebra");
        return BlockElement(source, embed_matrix(t.matrix), tol);
    }
};

inline BlockElement quotient_apply(const QuotientMap& pi, const BlockElement& t,
                                   const Tolerances& tol = tolerances()) {
    return pi.apply(t, tol);
}

} // namespace projcalc
