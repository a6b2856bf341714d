# Copyright 2026 The almostnet authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Almost-net point sets.

Seeded generation of near-equidistributed point multisets in [0,1)^d,
exhaustive exact verification of per-box counts, and Gram-matrix
certificates. The heavy lifting lives in the compiled `_core` module.
"""

from ._core import (
    CertificateCheck,
    GramCertificate,
    NetParams,
    VerifyReport,
    __version__,
    certificate_file,
    derive_params,
    enumerate_irreducibles,
    generate_digit_points,
    generate_float_points,
    generate_verified,
    irreducible_count,
    perfect_net_check_file,
    structural_selftest,
    to_float,
    verify,
    verify_file,
    write_point_file,
)

__all__ = [
    "CertificateCheck",
    "GramCertificate",
    "NetParams",
    "VerifyReport",
    "__version__",
    "certificate_file",
    "derive_params",
    "enumerate_irreducibles",
    "generate_digit_points",
    "generate_float_points",
    "generate_verified",
    "irreducible_count",
    "perfect_net_check_file",
    "structural_selftest",
    "to_float",
    "verify",
    "verify_file",
    "write_point_file",
]
