/*
 * MCP23S17 I/O expander on /dev/spidev0.0: configures port A as outputs
 * and runs a walking-bit pattern across the eight LEDs.
 */

static const char *device = "/dev/spidev0.0";
static uint8_t mode = 0;
static uint32_t mode32 = 0;
static uint8_t lsb_first = 0;
static uint8_t bits = 8;
static uint32_t speed = 1000000;

static void pabort(const char *s)
{
    perror(s);
    abort();
}

static int mcp_write(int fd, uint8_t reg, uint8_t value)
{
    uint8_t tx[3];
    struct spi_ioc_transfer tr = {
        .tx_buf = (unsigned long)tx,
        .rx_buf = 0,
        .len = 3,
        .delay_usecs = 0,
        .speed_hz = speed,
        .bits_per_word = bits,
    };

    tx[0] = 0x40;
    tx[1] = reg;
    tx[2] = value;
    if (ioctl(fd, MSG, &tr) < 1)
        pabort("can't send spi message");
    return 0;
}

static uint8_t mcp_read(int fd, uint8_t reg)
{
    uint8_t tx[3];
    uint8_t rx[3];
    struct spi_ioc_transfer tr = {
        .tx_buf = (unsigned long)tx,
        .rx_buf = (unsigned long)rx,
        .len = 3,
        .speed_hz = speed,
        .bits_per_word = bits,
    };

    tx[0] = 0x41;
    tx[1] = reg;
    tx[2] = 0;
    if (ioctl(fd, MSG, &tr) < 1)
        pabort("can't send spi message");
    return rx[2];
}

int main(int argc, char *argv[])
{
    int fd;
    int i;
    uint8_t pattern = 1;

    fd = open(device, O_RDWR);
    if (fd < 0)
        pabort("can't open device");

    if (ioctl(fd, WR_MODE, &mode) == -1) pabort("can't set spi mode");
    if (ioctl(fd, WR_MODE32, &mode32) == -1) pabort("can't set spi mode32");
    if (ioctl(fd, WR_LSB_FIRST, &lsb_first) == -1) pabort("can't set bit order");
    if (ioctl(fd, WR_BITS_PER_WORD, &bits) == -1) pabort("can't set bits per word");

    mcp_write(fd, 0x00, 0x00);
    mcp_write(fd, 0x12, 0x00);

    for (i = 0; i < 8; i++) {
        mcp_write(fd, 0x12, pattern);
        if (mcp_read(fd, 0x12) != pattern)
            printf("readback mismatch at step %d\n", i);
        pattern = pattern << 1;
        usleep(250000);
    }

    mcp_write(fd, 0x12, 0x00);
    close(fd);
    return 0;
}
