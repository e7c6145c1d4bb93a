import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'darkcell.settings')
django.setup()
