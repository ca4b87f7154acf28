#pragma once
// Homotopy-equivalent reduction of complexes: Gaussian elimination of unit
// entries and the crossing-by-crossing scan with delooping.

#include <memory>
#include <vector>

#include "bnk/chainmap.hpp"

namespace bnk {

/// Moves vectors between a model complex and its reduction.
class Transport {
public:
    virtual ~Transport() = default;
    /// model chain at `deg` -> reduced chain
    virtual SparseVec pushForward(int deg, const SparseVec& v) const = 0;
    /// reduced chain at `deg` -> model chain
    virtual SparseVec pullBack(int deg, const SparseVec& v) const = 0;
};

struct ReducedComplex {
    std::shared_ptr<const BNComplex> complex;  // reduced
    std::shared_ptr<const BNComplex> model;    // what it was reduced from; may be null
    std::shared_ptr<const Transport> transport;

    bool hasTransport() const { return model && transport; }
    SparseVec pushForward(int deg, const SparseVec& v) const;
    SparseVec pullBack(int deg, const SparseVec& v) const;
    /// Materialized on request; both throw VerificationFailed without a model.
    ChainMap toReduced() const;
    ChainMap fromReduced() const;
};

enum class PivotRule { Markowitz, First };

struct ReduceOptions {
    PivotRule rule = PivotRule::Markowitz;
    bool recordTransport = true;
};

ReducedComplex gaussEliminate(std::shared_ptr<const BNComplex> c, const ReduceOptions& opt = {});

/// Any exponent-0 differential entry left?
bool hasUnitEntry(const BNComplex& c);

enum class ScanOrder { Traversal, Greedy };

struct ScanOptions {
    ScanOrder order = ScanOrder::Traversal;
};

/// The result carries no model or transport.
ReducedComplex scanReduce(const PlanarDiagram& d, const ScanOptions& opt = {});

struct ScanStats {
    int maxObjects = 0;  // largest intermediate complex
    int steps = 0;
};
ReducedComplex scanReduce(const PlanarDiagram& d, const ScanOptions& opt, ScanStats* stats);

}  // namespace bnk
