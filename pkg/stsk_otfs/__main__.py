'''
`python3 -m stsk_otfs`
'''
import sys
from .cli import main

sys.exit(main())
