"""Exact HeLP-style constraints for torsion units of integral group rings.

Subpackages/modules:

* cyclo     - canonical cyclotomic field arithmetic
* chartab   - character table data model, text encoding, validation
* psl2      - generic character tables for PSL(2,q) / PGL(2,q)
* lattice   - exact rational polyhedra and integer point enumeration
* engine    - constraint systems on partial augmentations, order solving
* pq        - prime graph of a group and non-edge verdicts
* datasets  - embedded character data
* cli       - command-line interface (`helixpq`)
"""

__version__ = "0.1.0"
