# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
try:
    from ._version import __version__, __version_tuple__
except ModuleNotFoundError:
    __version__ = ""
    __version_tuple__ = ()

__all__ = ["__version__"]
