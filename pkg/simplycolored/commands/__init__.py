# CLI subcommands, one module per topic
