"""Exact arithmetic toolkit for completely normal bases of Galois fields.

Subpackage map:

* ``nt``        -- integer number theory (factoring, orders, suborders)
* ``field``     -- finite field contexts, elements, Frobenius, embeddings
* ``poly``      -- dense univariate polynomials over a field context
* ``classify``  -- per-pair (q, n) classification, criteria and counts
* ``modstruct`` -- Frobenius-module structure on concrete fields, censuses
* ``chars``     -- numerical character-sum verification on tiny fields
* ``search``    -- search and certification of primitive completely normal
  elements
* ``service``   -- FastAPI wrapper with pydantic request/response models
* ``cli``       -- thin command-line client for the service layer
"""

__version__ = "0.1.0"

#: Identifier of the deterministic default-modulus policy (see field.build_field).
MODULUS_POLICY = "lex-min-monic-v1"

#: Default cap on exhaustive enumerations (number of field elements).
DEFAULT_BUDGET = 2**24
