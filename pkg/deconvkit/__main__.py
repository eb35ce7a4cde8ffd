from __future__ import annotations

import sys

from deconvkit.cli import main

sys.exit(main())
