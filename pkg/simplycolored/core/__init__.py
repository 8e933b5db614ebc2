# Core infrastructure: settings, logging, errors and the exact linear algebra substrate
