#ifndef BLOCHKIT_SERIALIZE_HPP
#define BLOCHKIT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include <blochkit/derham.hpp>
#include <blochkit/ksymbols.hpp>
#include <blochkit/singularities.hpp>

namespace blochkit
{

using Json = nlohmann::ordered_json;

// {nilpotents, bound, ideal?: [strings], params?: [{name, invertible}],
//  monomial_ideal?}. The ideal is the listed generators plus (t1..tm)^N; without
// "monomial_ideal" the mode follows from whether every generator is a
// monomial. Throws "invalid algebra spec: ...".
AlgebraSpec algebra_spec_from_json(const Json &j);
AlgebraSpec load_algebra_spec(const std::string &path);
Json to_json(const AlgebraSpec &spec);

Json to_json(const RelativeSpec &rel, const VarLayout &vars);
Json to_json(const CohomologyReport &r);
Json to_json(const ExactnessCertificate &c);
Json to_json(const Verdict &v);
Json to_json(const SequenceReport &r);
Json to_json(const SigmaReport &r);
Json to_json(const SurjectivityReport &r);
Json to_json(const SingularityReport &r);
Json to_json(const BlochClass &c);

std::string terms_to_string(const Form::Terms &t, const AlgebraPtr &alg, int degree);

} // namespace blochkit

#endif
