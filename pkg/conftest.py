import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hyperspectra.settings')
django.setup()
