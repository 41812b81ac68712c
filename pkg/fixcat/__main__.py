from fixcat.cli.main import main

raise SystemExit(main())
