#pragma once

#include "normcert/bowtie_structure.hpp"
#include "normcert/certificate.hpp"
#include "normcert/certify.hpp"
#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/hessian.hpp"
#include "normcert/hom.hpp"
#include "normcert/inequalities.hpp"
#include "normcert/isomorphism.hpp"
#include "normcert/json_io.hpp"
#include "normcert/matrix.hpp"
#include "normcert/poly.hpp"
#include "normcert/psd.hpp"
#include "normcert/rational.hpp"
