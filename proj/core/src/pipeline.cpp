#include "lasuscc/pipeline.hpp"

#include <fmt/format.h>

#include "lasuscc/errors.hpp"
#include "lasuscc/fcidump.hpp"

namespace lasuscc {

PreparedSystem native_system(const Geometry& geometry, const FragmentLayout& layout, const ScfSettings& scf) {
    const AoIntegrals ao = build_sto3g_hydrogen(geometry);
    layout.validate(static_cast<std::size_t>(ao.overlap.rows()), ao.n_electrons);
    const ScfResult hf = rhf(ao, scf);
    std::vector<std::vector<int>> groups;
    for (const auto& f : layout.fragments) groups.push_back(f.orbitals);
    const Matrix c = localize_per_fragment(ao.overlap, hf.fock, groups);
    PreparedSystem out;
    out.ints = ao_to_mo(ao, c, ao.n_electrons);
    out.ints.n_alpha = layout.n_alpha();
    out.ints.n_beta = layout.n_beta();
    out.layout = layout;
    out.rhf_energy = hf.energy;
    out.scf_iterations = hf.iterations;
    out.source = "geometry";
    return out;
}

PreparedSystem prepare_system(const JobConfig& job) {
    if (job.geometry) return native_system(*job.geometry, job.layout);
    if (!job.fcidump) throw ValidationError("job names neither a geometry nor an FCIDUMP file");
    PreparedSystem out;
    out.ints = read_fcidump(*job.fcidump);
    job.layout.validate(out.ints.n_orb, out.ints.n_alpha + out.ints.n_beta);
    if (job.layout.n_alpha() != out.ints.n_alpha || job.layout.n_beta() != out.ints.n_beta) {
        throw ValidationError(fmt::format("{}: layout places {}a/{}b electrons, file has {}a/{}b", job.fcidump->string(),
                                          job.layout.n_alpha(), job.layout.n_beta(), out.ints.n_alpha,
                                          out.ints.n_beta));
    }
    out.layout = job.layout;
    out.source = job.fcidump->string();
    return out;
}

} // namespace lasuscc
